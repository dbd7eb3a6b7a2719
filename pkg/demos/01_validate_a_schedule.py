"""Two machines that share a wire: what counts as a clash, and what does not.

Every job holds its machine for a setup phase, a free-running phase and a
teardown phase. Neighbouring machines may not be in setup or teardown at the
same moment. This walk-through builds a tiny instance, breaks a schedule on
purpose and then repairs it.
"""

from smcsched import ConflictGraph, Entry, Instance, Schedule, makespan, validate_schedule
from smcsched.gantt import gantt_text

pair = ConflictGraph.complete(2)
inst = Instance.identical(pair, 2)  # two unit jobs: 1 setup, 1 run, 1 teardown

clash = Schedule((Entry(0, 0, 0), Entry(1, 1, 0)))
report = validate_schedule(inst, clash)
print("both start at 0 ->", "valid" if report.valid else "invalid")
for v in report.violations:
    print("   ", v.kind, "jobs", v.jobs, "during", v.interval)

# Shift the second job by one unit: its setup now overlaps the first job's
# free-running phase, which is allowed.
staggered = Schedule((Entry(0, 0, 0), Entry(1, 1, 1)))
print("staggered by one ->", "valid" if validate_schedule(inst, staggered).valid else "invalid")
print("makespan", makespan(inst, staggered))
print(gantt_text(inst, staggered), end="")
print("legend: # blocking, = free-running, . idle")

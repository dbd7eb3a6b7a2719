"""When setup and teardown dominate, only one independent set works at once.

With long blocking phases, a neighbour can never overlap usefully, so the
best plan picks a largest independent set of machines and spreads the jobs
over it. For mixed job lengths the jobs are placed longest first.
"""

from smcsched import ConflictGraph, Instance, Job, classify_props, makespan, solve_exact
from smcsched.graph import greedy_1_is, max_c_is_exact
from smcsched.longblock import longblock_bounds, schedule_evenly_on_is, schedule_lpt_on_is

# A ring of six machines; every other machine can run at the same time.
ring = ConflictGraph.from_edges(6, [(i, (i + 1) % 6) for i in range(6)])
inst = Instance.identical(ring, 7, Job(3, 1, 3))
print("properties:", sorted(classify_props(inst)))

best = max_c_is_exact(ring, 1).classes[0]
even = schedule_evenly_on_is(inst, best)
print(f"largest independent set {list(best)} -> makespan {makespan(inst, even)}")

# Mixed jobs: longest first on a cheap greedy set, checked against the oracle.
mixed = Instance(ring, (Job(3, 1, 3), Job(2, 0, 2), Job(3, 0, 3), Job(2, 1, 2), Job(2, 0, 2)))
greedy = greedy_1_is(ring).classes[0]
lpt = schedule_lpt_on_is(mixed, greedy)
_, opt = solve_exact(mixed)
print(f"greedy set {list(greedy)}: longest-first gives {makespan(mixed, lpt)}, optimum {opt}")

report = longblock_bounds(mixed, len(best))
for bound in report.lower:
    print(f"  lower {bound.value:>3}  {bound.source}")
print(f"  best upper {report.best_upper}")

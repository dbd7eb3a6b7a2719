"""Short setup and teardown: interleave several independent sets in a pattern.

If the free-running phase is long compared with the blocking phases, one
group of machines can run while the next group sets up. A pattern staggers
disjoint independent sets by the setup length, so every job in it still
avoids its neighbours. Repeating the pattern covers any number of jobs.
"""

from smcsched import ConflictGraph, Instance, Job, makespan, solve_exact, validate_schedule
from smcsched.gantt import gantt_text
from smcsched.graph import max_c_is_exact
from smcsched.shortblock import PatternParams, beta_c, lower_bound_short, pattern_width, solve_patterns

line = ConflictGraph.path(5)
job = Job(1, 3, 1)
inst = Instance.identical(line, 8, job)
params = PatternParams.from_job(job)
width = pattern_width(params)
groups = max_c_is_exact(line, width)
print(f"pattern width {width}, groups {[list(g) for g in groups.classes]}")

s = solve_patterns(inst, groups)
optimal, opt = solve_exact(inst)
assert validate_schedule(inst, s).valid
print(f"patterns give {makespan(inst, s)}, optimum {opt}, guaranteed ratio {params.ratio_ceiling():.3f}")
print(gantt_text(inst, s), end="")

# A schedule can be no shorter than q times ceil(n / machines it keeps
# blocking across k+1 moments). Measured on the optimal schedule itself:
beta = beta_c(inst, optimal, params.k + 1)
print(f"optimal schedule blocks {beta} machines over {params.k + 1} moments")
print(f"hence the optimum is at least {lower_bound_short(params, inst.n, beta)}")

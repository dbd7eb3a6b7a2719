"""Unit jobs on a tree: a star decomposition decides the optimum exactly.

For jobs with one unit each of setup, run and teardown on a bipartite
conflict graph, the machines are split into stars. The stars tell how many
jobs fit into any makespan, and the smallest makespan that fits all jobs is
optimal.
"""

from smcsched import ConflictGraph, Instance, makespan, solve_exact, validate_schedule
from smcsched.gantt import gantt_text
from smcsched.unit import build_star_forest, capacity, solve_complete, solve_unit_bipartite, star_optimum

tree = ConflictGraph.from_edges(7, [(0, 1), (0, 2), (0, 3), (0, 4), (5, 6), (0, 5)])
forest, colors = build_star_forest(tree)
print("stars (center: leaves):", forest.stars())
for horizon in (3, 4, 6, 8, 12):
    print(f"  jobs that fit in makespan {horizon:>2}: {capacity(forest, colors, horizon)}")

value, s = solve_unit_bipartite(tree, 22)
inst = Instance.identical(tree, 22)
assert validate_schedule(inst, s).valid
print(f"22 jobs -> makespan {value}; exact search agrees: {solve_exact(inst)[1]}")
print(gantt_text(inst, s), end="")

print("closed forms: K4 with 5 jobs ->", solve_complete(4, 5)[0], "| star of 3 leaves with 12 jobs ->", star_optimum(3, 12)[0])
print("makespan recomputed from the schedule:", makespan(inst, s))

"""Drive the `smc` command line end to end in a scratch directory.

Writes an instance file, solves it, validates the result, prints bounds and
a text Gantt chart, then runs a small benchmark table.
"""

import json
import tempfile
from pathlib import Path

from smcsched.cli import main

INSTANCE = """smc 1
machines 4
edge 0 1
edge 1 2
edge 2 3
edge 3 0
jobs identical 6 1 1 1
"""

BENCH = {
    "seed": 1,
    "families": [
        {"name": "trees", "graph": "tree", "m": [3, 7], "n": [2, 9], "strategy": "unit-bipartite", "trials": 3},
        {
            "name": "short",
            "graph": "random",
            "m": [2, 5],
            "n": [2, 6],
            "jobs": {"b1": [1, 2], "p": [2, 4], "b2": [1, 1], "identical": True},
            "strategy": "patterns",
            "trials": 3,
        },
    ],
}

with tempfile.TemporaryDirectory() as tmp:
    inst = Path(tmp) / "square.txt"
    sched = Path(tmp) / "square.sched"
    inst.write_text(INSTANCE)
    bench = Path(tmp) / "bench.json"
    bench.write_text(json.dumps(BENCH))

    for argv in (
        ["solve", str(inst), "-o", str(sched)],
        ["validate", str(inst), str(sched)],
        ["bound", str(inst)],
        ["gantt", str(inst), str(sched)],
        ["bench", str(bench), "--format", "text"],
    ):
        print("$ smc", " ".join(a if "/" not in a else Path(a).name for a in argv))
        code = main(argv)
        print(f"(exit {code})\n")

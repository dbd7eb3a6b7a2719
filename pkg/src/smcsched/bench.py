"""Random instance families, strategy-versus-oracle ratios, and their ceilings.

A bench config is JSON::

    {
      "seed": 7,
      "oracle_budget": 200000,
      "families": [
        {"name": "stars", "graph": "star", "m": [2, 6], "n": [1, 10],
         "jobs": {"b1": [1, 1], "p": [1, 1], "b2": [1, 1], "identical": true},
         "strategy": "unit-bipartite", "trials": 10}
      ]
    }

Graph kinds are ``random``, ``bipartite``, ``tree``, ``path``, ``star``,
``complete`` and ``empty``; ``density`` sets the edge probability of the
random kinds.  Besides the solver strategies, ``lpt`` runs longest-first
list scheduling on a greedy independent set.  Each trial draws from its own
generator seeded by ``(seed, family, trial)``, so tables are reproducible.
"""

from __future__ import annotations

import csv
import io
import json
import random
from dataclasses import dataclass
from typing import Optional

from .core import PROP_III, ConflictGraph, InputError, Instance, Job, ResourceError, classify_props, makespan
from .dispatch import STRATEGIES, applicable, solve
from .exact import SearchConfig, solve_exact
from .graph import greedy_1_is, max_c_is_exact
from .longblock import schedule_lpt_on_is

GRAPH_KINDS = ("random", "bipartite", "tree", "path", "star", "complete", "empty")
BENCH_STRATEGIES = tuple(s for s in STRATEGIES if s != "auto") + ("lpt",)
COLUMNS = ("family", "trial", "m", "edges", "n", "jobs", "strategy", "makespan", "optimum", "ratio", "ceiling", "within")
MAX_DRAWS = 1000


@dataclass(frozen=True)
class Family:
    name: str
    graph: str
    m: tuple
    n: tuple
    jobs: dict
    strategy: str
    trials: int = 10
    density: float = 0.5

    @classmethod
    def from_dict(cls, d: dict) -> "Family":
        try:
            fam = cls(
                name=str(d["name"]),
                graph=d.get("graph", "random"),
                m=tuple(d["m"]),
                n=tuple(d["n"]),
                jobs=dict(d.get("jobs", {"b1": [1, 1], "p": [1, 1], "b2": [1, 1], "identical": True})),
                strategy=d["strategy"],
                trials=int(d.get("trials", 10)),
                density=float(d.get("density", 0.5)),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad bench family {d!r}: {exc}") from None
        if fam.graph not in GRAPH_KINDS:
            raise InputError(f"unknown graph kind {fam.graph!r}")
        if fam.strategy not in BENCH_STRATEGIES:
            raise InputError(f"unknown bench strategy {fam.strategy!r}")
        return fam


def random_graph(kind: str, m: int, density: float, rng: random.Random) -> ConflictGraph:
    pairs = [(u, v) for u in range(m) for v in range(u + 1, m)]
    if kind == "random":
        edges = [e for e in pairs if rng.random() < density]
    elif kind == "bipartite":
        side = [rng.randrange(2) for _ in range(m)]
        edges = [(u, v) for u, v in pairs if side[u] != side[v] and rng.random() < density]
    elif kind == "tree":
        edges = [(rng.randrange(v), v) for v in range(1, m)]
    elif kind == "path":
        return ConflictGraph.path(m)
    elif kind == "star":
        return ConflictGraph.star(m - 1)
    elif kind == "complete":
        return ConflictGraph.complete(m)
    else:
        edges = []
    return ConflictGraph.from_edges(m, edges)


def _draw_job(ranges: dict, rng: random.Random) -> Optional[Job]:
    b1, p, b2 = (rng.randint(*ranges[k]) for k in ("b1", "p", "b2"))
    if b1 + p + b2 == 0:
        return None
    return Job(b1, p, b2)


def draw_instance(family: Family, rng: random.Random) -> Instance:
    """Sample until the family's strategy applies to the instance."""
    for _ in range(MAX_DRAWS):
        m = rng.randint(*family.m)
        n = rng.randint(*family.n)
        graph = random_graph(family.graph, m, family.density, rng)
        if family.jobs.get("identical", True):
            job = _draw_job(family.jobs, rng)
            jobs = None if job is None else (job,) * n
        else:
            jobs = tuple(_draw_job(family.jobs, rng) for _ in range(n))
            jobs = None if None in jobs else jobs
        if jobs is None:
            continue
        instance = Instance(graph, jobs)
        if family.strategy == "lpt":
            if PROP_III in classify_props(instance):
                return instance
        elif applicable(instance, family.strategy) is None:
            return instance
    raise InputError(f"family {family.name!r}: no instance fits strategy {family.strategy!r}")


def _run(instance: Instance, strategy: str):
    """(makespan, ratio ceiling) of one strategy."""
    if strategy == "lpt":
        machines = greedy_1_is(instance.graph).classes[0]
        schedule = schedule_lpt_on_is(instance, machines)
        alpha1 = max_c_is_exact(instance.graph, 1).size
        gamma = alpha1 / len(machines)
        return makespan(instance, schedule), gamma + 1 - 1 / instance.m
    result = solve(instance, strategy)
    return result.makespan, result.ratio_ceiling


def run_bench(config: dict) -> list:
    seed = config.get("seed", 0)
    budget = int(config.get("oracle_budget", 200_000))
    families = [Family.from_dict(d) for d in config.get("families", [])]
    rows = []
    for fam in families:
        for trial in range(fam.trials):
            rng = random.Random(f"{seed}/{fam.name}/{trial}")
            instance = draw_instance(fam, rng)
            value, ceiling = _run(instance, fam.strategy)
            try:
                _, opt = solve_exact(instance, SearchConfig(node_budget=budget))
            except ResourceError:
                opt = None
            ratio = None if not opt else value / opt
            if opt == 0:
                ratio = 1.0
            jobs = instance.jobs[0] if instance.jobs and instance.is_identical() else None
            rows.append(
                {
                    "family": fam.name,
                    "trial": trial,
                    "m": instance.m,
                    "edges": len(instance.graph.edges),
                    "n": instance.n,
                    "jobs": f"{jobs.b1}/{jobs.p}/{jobs.b2}" if jobs else "mixed",
                    "strategy": fam.strategy,
                    "makespan": value,
                    "optimum": "" if opt is None else opt,
                    "ratio": "" if ratio is None else f"{ratio:.4f}",
                    "ceiling": "" if ceiling is None else f"{ceiling:.4f}",
                    "within": "" if ratio is None or ceiling is None else ("yes" if ratio <= ceiling + 1e-9 else "no"),
                }
            )
    return rows


def format_rows(rows: list, fmt: str = "csv") -> str:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        return buf.getvalue()
    table = [list(COLUMNS)] + [[str(r[c]) for c in COLUMNS] for r in rows]
    widths = [max(len(row[i]) for row in table) for i in range(len(COLUMNS))]
    return "".join("  ".join(cell.rjust(w) for cell, w in zip(row, widths)).rstrip() + "\n" for row in table)


def load_config(text: str) -> dict:
    try:
        config = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"bench config is not valid JSON: {exc}") from None
    if not isinstance(config, dict):
        raise InputError("bench config must be a JSON object")
    return config

"""Exhaustive optimal scheduler over integral start times.

With integral job data there is always an optimal schedule whose starts are
integers, so time can be advanced one unit at a time.  The search state at
time ``t`` is, per machine, the job type it is running and how far along
that job is, together with how many jobs of each type are still unstarted.
Layers are expanded breadth first, so the first layer that contains a state
with nothing left to run is the optimum makespan.

Two states with the same machine configuration are compared by their
unstarted-job vectors; one that has started a superset of the other's jobs
dominates it, because dropping jobs from a feasible schedule keeps it
feasible.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional

from .core import Entry, Instance, ResourceError, Schedule

DEFAULT_NODE_BUDGET = 5_000_000


@dataclass(frozen=True)
class SearchConfig:
    horizon: Optional[int] = None  # defaults to a basic LPT schedule's makespan
    node_budget: int = DEFAULT_NODE_BUDGET
    symmetry: bool = False

    def resolve_horizon(self, instance: Instance) -> int:
        horizon = _basic_upper_bound(instance) if self.horizon is None else self.horizon
        if instance.n and horizon < 0:
            raise ValueError("horizon must be non-negative")
        return horizon


def _basic_upper_bound(instance: Instance) -> int:
    """Makespan of LPT on a greedy independent set; always feasible."""
    if not instance.jobs:
        return 0
    from .longblock import lpt_assignment
    from .graph import greedy_1_is

    machines = greedy_1_is(instance.graph).classes[0]
    return max(lpt_assignment(instance, machines).loads.values())


def _automorphisms(graph) -> list:
    """All vertex permutations preserving the edge set (backtracking)."""
    m = graph.m
    deg = [graph.degree(v) for v in range(m)]
    perms = []
    image = [-1] * m
    used = [False] * m

    def extend(v):
        if v == m:
            perms.append(tuple(image))
            return
        for w in range(m):
            if used[w] or deg[w] != deg[v]:
                continue
            ok = all(
                graph.has_edge(u, v) == graph.has_edge(image[u], w) for u in range(v)
            )
            if ok:
                image[v], used[w] = w, True
                extend(v + 1)
                image[v], used[w] = -1, False

    extend(0)
    return perms


class _Engine:
    def __init__(self, instance: Instance, config: SearchConfig):
        self.instance = instance
        self.config = config
        jobs = instance.jobs
        self.types = sorted(set(jobs), key=lambda j: (j.b1, j.p, j.b2))
        self.type_index = {t: i for i, t in enumerate(self.types)}
        self.counts = tuple(sum(1 for j in jobs if j == t) for t in self.types)
        m = instance.m
        self.m = m
        self.nbrs = [sorted(instance.graph.neighbors(v)) for v in range(m)]
        # phase code 0 is idle; code -> (type, elapsed); blocking masks over future slots
        self.phase = [None]
        self.code = {}
        self.mask = [0]
        self.remaining_time = [0]
        self.next_code = [0]
        for ti, t in enumerate(self.types):
            for e in range(t.q):
                self.code[(ti, e)] = len(self.phase)
                self.phase.append((ti, e))
                bits = 0
                for d, s in enumerate(range(e, t.q)):
                    if s < t.b1 or s >= t.b1 + t.p:
                        bits |= 1 << d
                self.mask.append(bits)
                self.remaining_time.append(t.q - e)
        for c in range(1, len(self.phase)):
            ti, e = self.phase[c]
            self.next_code.append(0 if e + 1 == self.types[ti].q else self.code[(ti, e + 1)])
        self.start_code = [self.code[(ti, 0)] for ti in range(len(self.types))]
        self.autos = _automorphisms(instance.graph) if config.symmetry else None
        self.min_q_by_type = [t.q for t in self.types]

    def canonical(self, cfg: tuple) -> tuple:
        if not self.autos:
            return cfg
        return min(tuple(cfg[p[i]] for i in range(self.m)) for p in self.autos)

    def lower_bound(self, cfg: tuple, rem: tuple) -> int:
        running = max((self.remaining_time[c] for c in cfg), default=0)
        work = sum(self.remaining_time[c] for c in cfg)
        pending = [i for i, r in enumerate(rem) if r]
        if not pending:
            return running
        work += sum(r * self.types[i].q for i, r in enumerate(rem))
        shortest = min(self.types[i].q for i in pending)
        bound = max(running, shortest, math.ceil(work / self.m))
        if sum(rem) > self.m:
            # two of the m + 1 longest pending jobs share a machine
            qs = sorted((self.types[i].q for i, r in enumerate(rem) for _ in range(r)), reverse=True)
            bound = max(bound, qs[self.m - 1] + qs[self.m])
        return bound

    def successors(self, cfg: tuple, rem: tuple):
        """Yield (new_config, new_remaining, starts) for every feasible start set."""
        m = self.m
        idle = [i for i in range(m) if cfg[i] == 0]
        masks = [self.mask[c] for c in cfg]
        ntypes = len(self.types)
        chosen = []
        rem = list(rem)

        def rec(k):
            if k == len(idle):
                new_cfg = tuple(self.next_code[c] for c in cur)
                yield new_cfg, tuple(rem), tuple(chosen)
                return
            i = idle[k]
            yield from rec(k + 1)
            for ti in range(ntypes):
                if not rem[ti]:
                    continue
                code = self.start_code[ti]
                bits = self.mask[code]
                if any(masks[j] & bits for j in self.nbrs[i]):
                    continue
                masks[i], cur[i] = bits, code
                rem[ti] -= 1
                chosen.append((i, ti))
                yield from rec(k + 1)
                chosen.pop()
                rem[ti] += 1
                masks[i], cur[i] = 0, 0

        cur = list(cfg)
        yield from rec(0)

    def run(self, horizon: int):
        """Return (makespan, path) of an optimal schedule within horizon, or None."""
        zero = tuple(0 for _ in range(self.m))
        start_rem = self.counts
        if not any(start_rem):
            return 0, []
        # layer[t] maps state key -> (config, remaining, parent key, starts)
        layers = [{(self.canonical(zero), start_rem): (zero, start_rem, None, ())}]
        expanded = 0
        for t in range(horizon):
            frontier = layers[-1]
            nxt = {}
            pareto: dict = {}
            for key, (cfg, rem, _, _) in frontier.items():
                expanded += 1
                if expanded > self.config.node_budget:
                    raise ResourceError(
                        f"exact search exceeded node budget {self.config.node_budget}"
                    )
                for new_cfg, new_rem, starts in self.successors(cfg, rem):
                    if t + 1 + self.lower_bound(new_cfg, new_rem) > horizon:
                        continue
                    ckey = self.canonical(new_cfg)
                    kept = pareto.setdefault(ckey, [])
                    if any(all(a <= b for a, b in zip(old, new_rem)) for old in kept):
                        continue
                    for old in [o for o in kept if all(b <= a for a, b in zip(o, new_rem))]:
                        kept.remove(old)
                        del nxt[(ckey, old)]
                    kept.append(new_rem)
                    nxt[(ckey, new_rem)] = (new_cfg, new_rem, key, starts)
            layers.append(nxt)
            goal = (self.canonical(zero), tuple(0 for _ in start_rem))
            if goal in nxt:
                return t + 1, self._trace(layers, goal)
            if not nxt:
                return None
        return None

    def _trace(self, layers, key):
        path = []
        for t in range(len(layers) - 1, 0, -1):
            _, _, parent, starts = layers[t][key]
            for machine, ti in starts:
                path.append((t - 1, machine, ti))
            key = parent
        return path

    def to_schedule(self, path) -> Schedule:
        pools = {}
        for idx, job in enumerate(self.instance.jobs):
            pools.setdefault(self.type_index[job], []).append(idx)
        entries = []
        for start, machine, ti in sorted(path):
            entries.append(Entry(pools[ti].pop(0), machine, start))
        return Schedule(tuple(entries))


def solve_exact(instance: Instance, config: SearchConfig = SearchConfig()):
    """Optimal schedule and makespan; raises ResourceError when the budget runs out."""
    engine = _Engine(instance, config)
    horizon = config.resolve_horizon(instance)
    result = engine.run(horizon)
    if result is None:
        raise ResourceError(f"no feasible schedule within horizon {horizon}")
    value, path = result
    return engine.to_schedule(path), value


def optimal_makespan_decision(instance: Instance, bound: int, config: SearchConfig = SearchConfig()) -> bool:
    """Whether some feasible schedule finishes by ``bound``."""
    if instance.n == 0:
        return bound >= 0
    if bound >= instance.total_q():
        return True
    engine = _Engine(instance, config)
    return engine.run(bound) is not None


def exact_makespan(instance: Instance, config: SearchConfig = SearchConfig()) -> int:
    return solve_exact(instance, config)[1]


def all_schedules_brute_force(instance: Instance, horizon: int):
    """Every integral start assignment up to ``horizon``; tiny instances only.

    Used as an independent cross-check of the layered search.
    """
    n, m = instance.n, instance.m
    slots = [(mach, s) for mach in range(m) for s in range(horizon)]
    for choice in itertools.product(slots, repeat=n):
        yield Schedule(tuple(Entry(j, mach, s) for j, (mach, s) in enumerate(choice)))

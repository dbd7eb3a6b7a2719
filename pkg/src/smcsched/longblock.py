"""Long blocking times: scheduling on an independent set of machines.

When every feasible schedule is basic, jobs on adjacent machines never run
concurrently and an optimal schedule can be moved onto a maximum independent
set.  What remains is classical makespan minimisation on identical parallel
machines.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .core import (
    PROP_III,
    Entry,
    InputError,
    Instance,
    ResourceError,
    Schedule,
    classify_props,
)
from .graph import greedy_1_is

DEFAULT_DP_BUDGET = 200_000


@dataclass(frozen=True)
class Bound:
    value: int
    source: str


@dataclass(frozen=True)
class BoundReport:
    lower: tuple = ()
    upper: tuple = ()

    @property
    def best_lower(self) -> int:
        return max((b.value for b in self.lower), default=0)

    @property
    def best_upper(self) -> Optional[int]:
        return min((b.value for b in self.upper), default=None)

    def merged(self, other: "BoundReport") -> "BoundReport":
        return BoundReport(self.lower + other.lower, self.upper + other.upper)


@dataclass(frozen=True)
class ISAssignment:
    machines: tuple
    queues: dict = field(default_factory=dict)

    @property
    def loads(self) -> dict:
        return {m: sum(q for _, q in self.queues.get(m, ())) for m in self.machines}


def _check_is(instance: Instance, machines: Iterable[int]) -> tuple:
    machines = tuple(sorted(set(machines)))
    for v in machines:
        if not (0 <= v < instance.m):
            raise InputError(f"machine id {v} out of range")
    if not instance.graph.is_independent(machines):
        raise InputError("machine set is not independent in the conflict graph")
    if instance.n and not machines:
        raise InputError("an empty machine set cannot process jobs")
    return machines


def _back_to_back(queues: dict) -> Schedule:
    entries = []
    for machine, queue in queues.items():
        t = 0
        for job, q in queue:
            entries.append(Entry(job, machine, t))
            t += q
    return Schedule(tuple(entries))


def schedule_evenly_on_is(instance: Instance, machines: Iterable[int]) -> Schedule:
    """Round-robin jobs of equal system time over an independent set.

    Job ``k`` goes to the ``k mod |I|``-th machine and starts at
    ``floor(k / |I|) * q``.
    """
    machines = _check_is(instance, machines)
    if len({j.q for j in instance.jobs}) > 1:
        raise InputError("even distribution needs equal system times")
    entries = []
    for k, job in enumerate(instance.jobs):
        entries.append(Entry(k, machines[k % len(machines)], (k // len(machines)) * job.q))
    return Schedule(tuple(entries))


def lpt_assignment(instance: Instance, machines: Iterable[int]) -> ISAssignment:
    """Longest system time first onto the least-loaded machine (lowest id on ties)."""
    machines = _check_is(instance, machines)
    loads = {m: 0 for m in machines}
    queues = {m: [] for m in machines}
    order = sorted(range(instance.n), key=lambda j: (-instance.jobs[j].q, j))
    for j in order:
        target = min(machines, key=lambda m: (loads[m], m))
        q = instance.jobs[j].q
        queues[target].append((j, q))
        loads[target] += q
    return ISAssignment(machines, {m: tuple(v) for m, v in queues.items()})


def schedule_lpt_on_is(instance: Instance, machines: Iterable[int]) -> Schedule:
    """List scheduling on an independent set; requires PROP-III."""
    if PROP_III not in classify_props(instance):
        raise InputError("LPT on an independent set requires PROP-III job data")
    return _back_to_back(dict(lpt_assignment(instance, machines).queues))


def partition_min_makespan(sizes: list, k: int, budget: int = DEFAULT_DP_BUDGET):
    """Exact P||Cmax: split ``sizes`` over ``k`` identical machines.

    Dynamic program over sorted load vectors, items in decreasing size,
    pruned by the LPT value.  Returns (makespan, machine index per item).
    """
    if k < 1:
        raise InputError("need at least one machine")
    if not sizes:
        return 0, []
    order = sorted(range(len(sizes)), key=lambda i: (-sizes[i], i))
    lpt = [0] * k
    for i in order:
        lpt[lpt.index(min(lpt))] += sizes[i]
    best = max(lpt)
    # state: sorted load tuple -> (parent state, machine slot in parent order)
    layers = [{tuple([0] * k): None}]
    for i in order:
        nxt = {}
        for loads in layers[-1]:
            tried = set()
            for slot in range(k):
                if loads[slot] in tried:
                    continue
                tried.add(loads[slot])
                new = list(loads)
                new[slot] += sizes[i]
                if new[slot] > best:
                    continue
                key = tuple(sorted(new))
                if key not in nxt:
                    nxt[key] = (loads, slot)
                    if len(nxt) > budget:
                        raise ResourceError(f"partition DP exceeded budget {budget}")
        layers.append(nxt)
    final = min(layers[-1], key=lambda s: (max(s), s))
    steps = []
    state = final
    for depth in range(len(order), 0, -1):
        parent, slot = layers[depth][state]
        steps.append(parent[slot])
        state = parent
    steps.reverse()
    # machines with equal load are interchangeable: map each step by load value
    assign = [0] * len(sizes)
    loads = [0] * k
    for load_before, i in zip(steps, order):
        machine = loads.index(load_before)
        assign[i] = machine
        loads[machine] += sizes[i]
    return max(final), assign


def small_exact_on_is(instance: Instance, machines: Iterable[int], budget: int = DEFAULT_DP_BUDGET) -> Schedule:
    """Optimal split of PROP-III jobs over an independent set, jobs back to back."""
    if PROP_III not in classify_props(instance):
        raise InputError("exact partition on an independent set requires PROP-III job data")
    machines = _check_is(instance, machines)
    sizes = [job.q for job in instance.jobs]
    _, assign = partition_min_makespan(sizes, len(machines), budget)
    queues = {m: [] for m in machines}
    for j, slot in enumerate(assign):
        queues[machines[slot]].append((j, sizes[j]))
    return _back_to_back(queues)


def longblock_bounds(instance: Instance, alpha1: int, upper_machines: Optional[Iterable[int]] = None) -> BoundReport:
    """Lower bounds for long-blocking instances plus an LPT upper bound.

    The average-load and even-split bounds rely on every schedule being
    basic, so they are only reported when a long-blocking property holds.
    """
    if alpha1 < 1:
        raise InputError("alpha1 must be at least 1")
    if instance.n == 0:
        return BoundReport((Bound(0, "empty instance"),), (Bound(0, "empty instance"),))
    lower = [Bound(max(j.q for j in instance.jobs), "longest system time")]
    props = classify_props(instance)
    if props:
        lower.append(Bound(math.ceil(instance.total_q() / alpha1), "average load over a maximum independent set"))
        qs = {j.q for j in instance.jobs}
        if len(qs) == 1:
            q = qs.pop()
            lower.append(Bound(q * math.ceil(instance.n / alpha1), "even split over a maximum independent set"))
    if upper_machines is None:
        upper_machines = greedy_1_is(instance.graph).classes[0]
    upper = []
    if upper_machines:
        assignment = lpt_assignment(instance, upper_machines)
        upper.append(Bound(max(assignment.loads.values()), "LPT on independent set"))
    return BoundReport(tuple(lower), tuple(upper))

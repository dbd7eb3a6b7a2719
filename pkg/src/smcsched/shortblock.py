"""Identical jobs with short blocking times: c-patterns and their bounds.

A c-pattern on disjoint independent sets ``I_1..I_c`` starts one job on
every machine of ``I_k`` at offset ``(k - 1) * b1``.  Staggering by the
first blocking time keeps all blocking windows apart as long as
``c <= floor(p / b1) + 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Sequence

from .core import (
    Entry,
    InputError,
    Instance,
    ParameterError,
    Schedule,
    SizeLimitError,
    Job,
    event_times,
    makespan,
)
from .graph import CIS

DEFAULT_BETA_GUARD = 4


@dataclass(frozen=True)
class PatternParams:
    b1: int
    p: int
    b2: int

    def __post_init__(self):
        if not (0 < self.b2 <= self.b1 <= self.p):
            raise ParameterError(
                f"short blocking needs 0 < b2 <= b1 <= p, got ({self.b1}, {self.p}, {self.b2})"
            )

    @classmethod
    def from_job(cls, job: Job) -> "PatternParams":
        return cls(job.b1, job.p, job.b2)

    @property
    def q(self) -> int:
        return self.b1 + self.p + self.b2

    @property
    def k(self) -> int:
        """ceil(p / b1): one less than the width used by the lower bound."""
        return -(-self.p // self.b1)

    @property
    def cmax(self) -> int:
        """Widest pattern whose blocking windows stay disjoint."""
        return self.p // self.b1 + 1

    def length(self, c: int) -> int:
        return self.q + (c - 1) * self.b1

    def ratio_ceiling(self) -> float:
        return 1 + (self.p // self.b1) * self.b1 / self.q


def is_short_identical(instance: Instance) -> bool:
    """Identical jobs with ``0 < min(b1, b2)`` and ``max(b1, b2) <= p``."""
    if not instance.jobs or not instance.is_identical():
        return False
    j = instance.jobs[0]
    return 0 < min(j.b1, j.b2) and max(j.b1, j.b2) <= j.p


def normalize_orientation(instance: Instance):
    """Swap b1 and b2 when b2 > b1; reversing time maps schedules between the two."""
    if not instance.is_identical():
        raise InputError("orientation normalisation needs identical jobs")
    if not instance.jobs:
        return instance, False
    job = instance.jobs[0]
    if job.b2 <= job.b1:
        return instance, False
    flipped = Job(job.b2, job.p, job.b1)
    return Instance(instance.graph, (flipped,) * instance.n), True


def mirror_schedule(instance: Instance, schedule: Schedule) -> Schedule:
    """Reverse time: a job ending at C starts at ``makespan - C``."""
    horizon = makespan(instance, schedule)
    return Schedule(
        tuple(
            Entry(e.job, e.machine, horizon - (e.start + instance.jobs[e.job].q))
            for e in schedule.entries
        )
    )


def build_c_pattern(classes: Sequence[Sequence[int]], params: PatternParams, t0: int = 0) -> list:
    """(machine, start) slots of a c-pattern starting at ``t0``."""
    c = len(classes)
    if c > params.cmax:
        raise ParameterError(f"pattern width {c} exceeds floor(p/b1)+1 = {params.cmax}")
    slots = []
    for k, cls in enumerate(classes):
        for machine in cls:
            slots.append((machine, t0 + k * params.b1))
    return sorted(slots, key=lambda s: (s[1], s[0]))


def _blocking_sets(instance: Instance, schedule: Schedule) -> list:
    """Bitmask of machines blocking a probe time inside each gap between events."""
    events = event_times(instance, schedule)
    probes = [(a + b) / 2 for a, b in zip(events, events[1:])]
    if events:
        probes.append(events[-1] + 1)
    sets = []
    for t in probes:
        mask = 0
        for e in schedule.entries:
            job = instance.jobs[e.job]
            if any(lo < t < hi for lo, hi in job.blocking_windows(e.start)):
                mask |= 1 << e.machine
        sets.append(mask)
    return sets


def beta_c(instance: Instance, schedule: Schedule, c: int, guard: int = DEFAULT_BETA_GUARD) -> int:
    """Most distinct machines blocking at some ``c`` time points of the schedule.

    Blocking is constant between consecutive events, and any number of
    distinct times fit inside one gap, so gaps are chosen with repetition.
    """
    if c < 1:
        raise InputError("c must be at least 1")
    if c > guard:
        raise SizeLimitError(f"beta_c limited to c <= {guard}")
    sets = sorted(set(_blocking_sets(instance, schedule)))
    best = 0
    for combo in combinations_with_replacement(sets, c):
        mask = 0
        for s in combo:
            mask |= s
        best = max(best, bin(mask).count("1"))
    return best


def lower_bound_short(params: PatternParams, n: int, beta: int) -> int:
    """Makespan lower bound ``q * ceil(n / beta)`` for a schedule with that beta."""
    if n == 0:
        return 0
    if beta < 1:
        raise InputError("beta must be positive when jobs are present")
    return params.q * math.ceil(n / beta)


def refined_lower_bound(params: PatternParams, n: int, beta: int, window: int) -> int:
    """Bound when at most ``beta`` jobs start in any window of length ``window <= q``."""
    if window > params.q:
        raise ParameterError("window must not exceed the system time")
    if n == 0:
        return 0
    if beta < 1:
        raise InputError("beta must be positive when jobs are present")
    return window * (n // beta) + (0 if n % beta == 0 else params.q)


def solve_patterns(instance: Instance, cis: CIS) -> Schedule:
    """Repeat c-patterns on the given disjoint independent sets until n jobs fit.

    The last pattern is trimmed by dropping the latest starts first.  When
    b2 > b1 the instance is solved mirrored and the schedule reversed.
    """
    if not instance.jobs:
        return Schedule()
    if not instance.is_identical():
        raise InputError("pattern scheduling needs identical jobs")
    work, flipped = normalize_orientation(instance)
    params = PatternParams.from_job(work.jobs[0])
    if not cis.is_valid(instance.graph):
        raise InputError("classes must be disjoint independent sets")
    size = cis.size
    if size == 0:
        raise InputError("an empty c-IS cannot process jobs")
    length = params.length(cis.c)
    slots = []
    for r in range(math.ceil(instance.n / size)):
        slots.extend(build_c_pattern(cis.classes, params, r * length))
    schedule = Schedule.from_slots(slots[: instance.n])
    if flipped:
        schedule = mirror_schedule(work, schedule)
    return schedule


def pattern_width(params: PatternParams) -> int:
    """Width used with a maximum c-IS: ``ceil(p/b1) + 1`` capped at the feasible maximum."""
    return min(params.k + 1, params.cmax)

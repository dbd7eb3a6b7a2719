"""Instances, schedules and the conflict-free validator.

A job occupies its machine for ``q = b1 + p + b2`` time units.  Its two
blocking windows ``(S, S + b1)`` and ``(C - b2, C)`` must not overlap the
blocking windows of any job on an adjacent machine of the conflict graph.
All intervals are open, so touching endpoints are legal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, NamedTuple, Sequence, Union

Time = Union[int, Fraction]

PROP_I = "PROP-I"
PROP_II = "PROP-II"
PROP_III = "PROP-III"

MACHINE_OVERLAP = "machine-overlap"
BLOCKING_OVERLAP = "conflict-blocking-overlap"


class SchedulingError(Exception):
    """Base class for errors raised by this package."""


class InputError(SchedulingError, ValueError):
    """Malformed input or violated precondition."""


class ParameterError(InputError):
    """A numeric parameter is outside the supported range."""


class ResourceError(SchedulingError, RuntimeError):
    """A search ran out of its node or size budget."""


class SizeLimitError(ResourceError):
    """Problem size exceeds the cap of an exhaustive routine."""


@dataclass(frozen=True)
class Job:
    b1: int
    p: int
    b2: int

    def __post_init__(self):
        for name in ("b1", "p", "b2"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool) or value < 0:
                raise InputError(f"job {name} must be a non-negative integer, got {value!r}")
        if self.q < 1:
            raise InputError("jobs with zero system time are not supported")

    @property
    def q(self) -> int:
        return self.b1 + self.p + self.b2

    def blocking_windows(self, start: Time) -> list[tuple[Time, Time]]:
        """Non-empty open blocking windows of this job when started at ``start``."""
        windows = []
        if self.b1 > 0:
            windows.append((start, start + self.b1))
        if self.b2 > 0:
            end = start + self.q
            windows.append((end - self.b2, end))
        return windows


UNIT_JOB = Job(1, 1, 1)


@dataclass(frozen=True)
class ConflictGraph:
    m: int
    edges: frozenset = frozenset()

    def __post_init__(self):
        if not isinstance(self.m, int) or self.m < 0:
            raise InputError(f"machine count must be a non-negative integer, got {self.m!r}")
        normalized = set()
        for edge in self.edges:
            u, v = edge
            if u == v:
                raise InputError(f"self-loop on machine {u}")
            for x in (u, v):
                if not (0 <= x < self.m):
                    raise InputError(f"machine id {x} out of range [0, {self.m})")
            normalized.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(normalized))
        adjacency = [set() for _ in range(self.m)]
        for u, v in normalized:
            adjacency[u].add(v)
            adjacency[v].add(u)
        object.__setattr__(self, "_adj", tuple(frozenset(a) for a in adjacency))

    @classmethod
    def from_edges(cls, m: int, edges: Iterable[tuple[int, int]]) -> "ConflictGraph":
        return cls(m, frozenset(tuple(e) for e in edges))

    @classmethod
    def complete(cls, m: int) -> "ConflictGraph":
        return cls.from_edges(m, combinations(range(m), 2))

    @classmethod
    def path(cls, m: int) -> "ConflictGraph":
        return cls.from_edges(m, ((i, i + 1) for i in range(m - 1)))

    @classmethod
    def star(cls, leaves: int) -> "ConflictGraph":
        """Star with center 0 and leaves 1..leaves."""
        return cls.from_edges(leaves + 1, ((0, i) for i in range(1, leaves + 1)))

    @classmethod
    def empty(cls, m: int) -> "ConflictGraph":
        return cls(m, frozenset())

    def neighbors(self, v: int) -> frozenset:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def is_independent(self, vertices: Iterable[int]) -> bool:
        vs = set(vertices)
        return all(not (self._adj[v] & vs) for v in vs)

    def is_complete(self) -> bool:
        return len(self.edges) == self.m * (self.m - 1) // 2

    def induced(self, vertices: Iterable[int]) -> tuple["ConflictGraph", list[int]]:
        """Induced subgraph on ``vertices`` relabelled 0..k-1, plus the label map."""
        labels = sorted(set(vertices))
        index = {v: i for i, v in enumerate(labels)}
        edges = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return ConflictGraph.from_edges(len(labels), edges), labels

    def components(self) -> list[list[int]]:
        """Connected components as sorted vertex lists, ordered by least vertex."""
        seen = [False] * self.m
        comps = []
        for s in range(self.m):
            if seen[s]:
                continue
            seen[s] = True
            stack, comp = [s], []
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in self._adj[v]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def relabel(self, perm: Sequence[int]) -> "ConflictGraph":
        return ConflictGraph.from_edges(self.m, ((perm[u], perm[v]) for u, v in self.edges))


@dataclass(frozen=True)
class Instance:
    graph: ConflictGraph
    jobs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "jobs", tuple(self.jobs))
        for job in self.jobs:
            if not isinstance(job, Job):
                raise InputError(f"expected Job, got {job!r}")

    @classmethod
    def identical(cls, graph: ConflictGraph, n: int, job: Job = UNIT_JOB) -> "Instance":
        return cls(graph, (job,) * n)

    @property
    def n(self) -> int:
        return len(self.jobs)

    @property
    def m(self) -> int:
        return self.graph.m

    def is_identical(self) -> bool:
        return len(set(self.jobs)) <= 1

    def is_unit(self) -> bool:
        return all(job == UNIT_JOB for job in self.jobs)

    def total_q(self) -> int:
        return sum(job.q for job in self.jobs)


class Entry(NamedTuple):
    job: int
    machine: int
    start: Time


@dataclass(frozen=True)
class Schedule:
    """Job to (machine, start) assignment, kept sorted by job id."""

    entries: tuple = ()

    def __post_init__(self):
        entries = tuple(sorted((Entry(*e) for e in self.entries), key=lambda e: e.job))
        seen = set()
        for e in entries:
            if e.job in seen:
                raise InputError(f"job {e.job} scheduled twice")
            seen.add(e.job)
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_slots(cls, slots: Iterable[tuple[int, Time]]) -> "Schedule":
        """Build a schedule from (machine, start) slots, numbering jobs in slot order."""
        ordered = sorted(slots, key=lambda s: (s[1], s[0]))
        return cls(tuple(Entry(j, mach, start) for j, (mach, start) in enumerate(ordered)))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def starts(self) -> dict:
        return {e.job: e.start for e in self.entries}

    def machines_used(self) -> set:
        return {e.machine for e in self.entries}

    def relabel_machines(self, perm: Sequence[int]) -> "Schedule":
        return Schedule(tuple(Entry(e.job, perm[e.machine], e.start) for e in self.entries))


class Violation(NamedTuple):
    kind: str
    jobs: tuple
    interval: tuple


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    violations: tuple = field(default_factory=tuple)

    def __bool__(self) -> bool:
        return self.valid


def _check_refs(instance: Instance, schedule: Schedule) -> None:
    for e in schedule.entries:
        if not (0 <= e.job < instance.n):
            raise InputError(f"unknown job id {e.job}")
        if not (0 <= e.machine < instance.m):
            raise InputError(f"unknown machine id {e.machine}")


def validate_schedule(instance: Instance, schedule: Schedule) -> ValidationReport:
    """Check machine exclusivity and conflict-free blocking; report every violation."""
    _check_refs(instance, schedule)
    graph, jobs = instance.graph, instance.jobs
    violations = []
    for a, b in combinations(schedule.entries, 2):
        ja, jb = jobs[a.job], jobs[b.job]
        if a.machine == b.machine:
            lo = max(a.start, b.start)
            hi = min(a.start + ja.q, b.start + jb.q)
            if lo < hi:
                violations.append(Violation(MACHINE_OVERLAP, (a.job, b.job), (lo, hi)))
        elif graph.has_edge(a.machine, b.machine):
            for wa in ja.blocking_windows(a.start):
                for wb in jb.blocking_windows(b.start):
                    lo, hi = max(wa[0], wb[0]), min(wa[1], wb[1])
                    if lo < hi:
                        violations.append(Violation(BLOCKING_OVERLAP, (a.job, b.job), (lo, hi)))
    return ValidationReport(not violations, tuple(violations))


def makespan(instance: Instance, schedule: Schedule) -> Time:
    if not schedule.entries:
        return 0
    return max(e.start + instance.jobs[e.job].q for e in schedule.entries)


def round_to_integral(schedule: Schedule) -> Schedule:
    """Floor every start time.

    For integral job data this keeps a feasible schedule feasible and never
    increases the makespan.
    """
    return Schedule(tuple(Entry(e.job, e.machine, math.floor(e.start)) for e in schedule.entries))


def _require_valid(instance: Instance, schedule: Schedule) -> None:
    report = validate_schedule(instance, schedule)
    if not report.valid:
        raise InputError(f"schedule is not conflict-free: {report.violations[0]}")


def is_basic(instance: Instance, schedule: Schedule) -> bool:
    """True iff jobs on adjacent machines never have overlapping system times."""
    _require_valid(instance, schedule)
    jobs, graph = instance.jobs, instance.graph
    for a, b in combinations(schedule.entries, 2):
        if not graph.has_edge(a.machine, b.machine):
            continue
        first, second = (a, b) if a.start <= b.start else (b, a)
        if first.start + jobs[first.job].q > second.start:
            return False
    return True


def classify_props(instance: Instance) -> frozenset:
    """Return the long-blocking properties the job set satisfies."""
    jobs = instance.jobs
    props = set()
    if not jobs:
        return frozenset({PROP_I, PROP_II, PROP_III})
    first = jobs[0]
    # a zero blocking time lets a neighbour start inside the other blocking
    # window, so both blocking times must be positive
    if all(j == first for j in jobs) and max(first.b1, first.b2) > first.p and min(first.b1, first.b2) > 0:
        props.add(PROP_I)
    if len({j.q for j in jobs}) == 1 and all(j.b1 > j.p and j.b2 > j.p for j in jobs):
        props.add(PROP_II)
    max_p = max(j.p for j in jobs)
    if all(j.b1 > max_p and j.b2 > max_p for j in jobs):
        props.add(PROP_III)
    return frozenset(props)


def _is_bipartite(vertices: set, graph: ConflictGraph) -> bool:
    color = {}
    for s in vertices:
        if s in color:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            for w in graph.neighbors(v):
                if w not in vertices:
                    continue
                if w not in color:
                    color[w] = 1 - color[v]
                    stack.append(w)
                elif color[w] == color[v]:
                    return False
    return True


def event_times(instance: Instance, schedule: Schedule) -> list:
    """Sorted distinct start, blocking-boundary and completion times."""
    events = set()
    for e in schedule.entries:
        job = instance.jobs[e.job]
        events.update((e.start, e.start + job.b1, e.start + job.b1 + job.p, e.start + job.q))
    return sorted(events)


def active_bipartite_check(instance: Instance, schedule: Schedule) -> bool:
    """Whether the machines running a job induce a bipartite subgraph at all times.

    Running sets are constant between consecutive event times, so one probe
    per gap suffices.
    """
    _require_valid(instance, schedule)
    events = event_times(instance, schedule)
    for lo, hi in zip(events, events[1:]):
        t = (lo + hi) / 2
        running = {
            e.machine
            for e in schedule.entries
            if e.start < t < e.start + instance.jobs[e.job].q
        }
        if not _is_bipartite(running, instance.graph):
            return False
    return True

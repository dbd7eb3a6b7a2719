"""Unit jobs (b1 = p = b2 = 1): complete graphs, stars and bipartite graphs.

On a star an optimal schedule only needs A-patterns (one job on every leaf,
length 3) and B-patterns (a 2-pattern over both colour classes, length 4).
A connected bipartite graph is covered by a spanning star forest with three
vertex colourings that let every star run its own optimal A/B sequence at
the same time without conflicts across stars.  Sequences are aligned by
makespan residue modulo 12 plus repeated 12-blocks.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Optional

from .core import (
    ConflictGraph,
    Entry,
    InputError,
    Instance,
    ParameterError,
    Schedule,
    makespan,
    validate_schedule,
)
from .graph import bipartition, konig_max_is, max_matching_bipartite

Q = 3
A_LEN, B_LEN, II_LEN, III_LEN = 3, 4, 9, 12

# Table rows by makespan residue: plain segments shared by every star type,
# then an optional coloured block whose variant depends on the star.
ROWS = {
    0: ((), None),
    3: (("A",), None),
    4: (("B",), None),
    6: (("A", "A"), None),
    7: (("A", "B"), None),
    8: (("B", "B"), None),
    9: ((), "II"),
    10: (("A", "A", "B"), None),
    11: (("A", "B", "B"), None),
    12: ((), "III"),
    13: (("B",), "II"),
    14: (("A", "A", "B", "B"), None),
    15: (("A",), "III"),
    16: (("B",), "III"),
    17: (("B", "B"), "II"),
    18: (("A", "A"), "III"),
    19: (("A", "B"), "III"),
    20: (("B", "B"), "III"),
}
RESIDUES = tuple(sorted(ROWS))
SEGMENT_LENGTH = {"A": A_LEN, "B": B_LEN, "II": II_LEN, "III": III_LEN}


def _ceil0(a: int, b: int) -> int:
    """Ceiling of a/b, clamped to 0 for non-positive a."""
    return 0 if a <= 0 else -(-a // b)


def solve_complete(m: int, n: int):
    """Optimal unit schedule on K_m: everything runs on two machines.

    Pairs of jobs form 2-patterns of length 4; an odd job adds 3.
    """
    if m < 1:
        if n:
            raise InputError("no machines to schedule on")
        return 0, Schedule()
    if m == 1:
        return Q * n, Schedule(tuple(Entry(j, 0, Q * j) for j in range(n)))
    entries = []
    for j in range(n):
        pair, second = divmod(j, 2)
        entries.append(Entry(j, second, 4 * pair + second))
    value = 4 * (n // 2) + 3 * (n % 2)
    return value, Schedule(tuple(entries))


def star_optimum(leaves: int, n: int):
    """Optimal makespan on the star S_leaves and the (A, B) pattern counts realising it.

    Some optimum uses at most two patterns of one kind, so three choices of
    that count per kind cover every case.
    """
    if leaves < 1:
        raise InputError("a star needs at least one leaf")
    if n == 0:
        return 0, (0, 0)
    best = None
    for k in range(3):
        b_count = _ceil0(n - k * leaves, leaves + 1)
        cand = (B_LEN * b_count + A_LEN * k, (k, b_count))
        if best is None or cand[0] < best[0]:
            best = cand
        a_count = _ceil0(n - k * (leaves + 1), leaves)
        cand = (A_LEN * a_count + B_LEN * k, (a_count, k))
        if cand[0] < best[0]:
            best = cand
    return best


@dataclass(frozen=True)
class StarForest:
    """Spanning star forest given by each leaf's center."""

    center_of: dict
    centers: frozenset

    def stars(self) -> dict:
        out = {c: [] for c in sorted(self.centers)}
        for leaf, c in self.center_of.items():
            out[c].append(leaf)
        return {c: sorted(v) for c, v in out.items()}

    def leaves(self) -> frozenset:
        return frozenset(self.center_of)

    def size(self, center: int) -> int:
        return sum(1 for c in self.center_of.values() if c == center)

    def edges(self) -> frozenset:
        return frozenset((min(l, c), max(l, c)) for l, c in self.center_of.items())

    def type_counts(self) -> dict:
        counts: dict = {}
        for c, leaves in self.stars().items():
            counts[len(leaves)] = counts.get(len(leaves), 0) + 1
        return counts


@dataclass(frozen=True)
class Colorings:
    A1: frozenset
    A2: frozenset
    B2: frozenset
    A3: frozenset
    B3: frozenset


_KINDS = {"II": (1, 2, 3), "III": (2, 3, 4)}


def _check_connected_bipartite(graph: ConflictGraph) -> tuple:
    if graph.m < 2:
        raise InputError("star forests need at least two vertices")
    if len(graph.components()) != 1:
        raise InputError("graph must be connected")
    parts = bipartition(graph)
    if not isinstance(parts, tuple):
        raise InputError("graph must be bipartite")
    return parts


def find_alternating_path(graph: ConflictGraph, forest: StarForest, kind: str) -> Optional[list]:
    """Search for an alternating path of type II or III.

    The path is returned as ``[c1, x2, c2, x3, c3, ..., xk, ck]`` where
    ``c_j`` is the center of star ``C_j`` and ``x_j`` a leaf of ``C_j``
    adjacent in the graph to ``c_{j-1}``.  Edges ``c_{j-1} x_j`` lie outside
    the forest, edges ``x_j c_j`` inside it.
    """
    start_size, mid_size, end_size = _KINDS[kind]
    stars = forest.stars()
    sizes = {c: len(v) for c, v in stars.items()}
    for s in sorted(c for c, l in sizes.items() if l == start_size):
        parent = {s: None}
        queue = deque([s])
        while queue:
            c = queue.popleft()
            for w in sorted(graph.neighbors(c)):
                d = forest.center_of.get(w)
                if d is None or d == c or d in parent:
                    continue
                if sizes[d] >= end_size:
                    path = [d, w]
                    node = c
                    while node is not None:
                        path.append(node)
                        link = parent[node]
                        if link is not None:
                            path.append(link[1])
                            node = link[0]
                        else:
                            node = None
                    return path[::-1]
                if sizes[d] == mid_size:
                    parent[d] = (c, w)
                    queue.append(d)
    return None


def apply_alternating_path(graph: ConflictGraph, forest: StarForest, path: list) -> StarForest:
    """Flip forest membership along the path: each ``x_j`` moves to ``c_{j-1}``."""
    if len(path) < 3 or len(path) % 2 == 0:
        raise InputError("malformed alternating path")
    centers = path[0::2]
    leaves = path[1::2]
    if len(set(centers)) != len(centers):
        raise InputError("alternating path revisits a star")
    for c in centers:
        if c not in forest.centers:
            raise InputError(f"{c} is not a star center")
    center_of = dict(forest.center_of)
    for j, x in enumerate(leaves):
        prev_c, own_c = centers[j], centers[j + 1]
        if forest.center_of.get(x) != own_c:
            raise InputError(f"{x} is not a leaf of the star centered at {own_c}")
        if not graph.has_edge(prev_c, x):
            raise InputError(f"{prev_c}-{x} is not an edge of the graph")
        center_of[x] = prev_c
    return StarForest(center_of, forest.centers)


def initial_star_forest(graph: ConflictGraph) -> StarForest:
    """Stars centered on a König vertex cover, seeded by a maximum matching."""
    matching = max_matching_bipartite(graph)
    cover, _ = konig_max_is(graph, matching)
    center_of = {}
    for u, v in sorted(matching):
        center, leaf = (u, v) if u in cover else (v, u)
        center_of[leaf] = center
    matched = {x for e in matching for x in e}
    for v in range(graph.m):
        if v not in matched:
            center_of[v] = min(u for u in graph.neighbors(v) if u in cover)
    return StarForest(center_of, frozenset(cover))


def compute_colorings(graph: ConflictGraph, forest: StarForest) -> Colorings:
    stars = forest.stars()
    by_size = lambda pred: [c for c, l in stars.items() if pred(len(l))]

    def members(c):
        return [c] + stars[c]

    a1 = forest.leaves()

    a2 = {x for c in by_size(lambda l: l >= 3) for x in stars[c]}
    b2 = {x for c in by_size(lambda l: l == 1) for x in members(c)}
    pending = set(by_size(lambda l: l == 2))
    changed = True
    while changed:
        changed = False
        for c in sorted(pending):
            if graph.neighbors(c) & a2:
                a2.update(stars[c])
                pending.discard(c)
                changed = True
                break
    for c in pending:
        b2.update(members(c))

    a3 = {x for c in by_size(lambda l: l >= 4) for x in stars[c]}
    b3 = {x for c in by_size(lambda l: l in (1, 2)) for x in members(c)}
    pending = set(by_size(lambda l: l == 3))
    changed = True
    while changed:
        changed = False
        for c in sorted(pending):
            if graph.neighbors(c) & a3:
                a3.update(stars[c])
                pending.discard(c)
                changed = True
                break
    for c in pending:
        b3.update(members(c))
    return Colorings(a1, frozenset(a2), frozenset(b2), frozenset(a3), frozenset(b3))


def build_star_forest(graph: ConflictGraph):
    """Star forest of a connected bipartite graph with its I, II and III colourings.

    Starts from stars around a minimum vertex cover, then removes alternating
    paths of type II and afterwards of type III before colouring.
    """
    _check_connected_bipartite(graph)
    forest = initial_star_forest(graph)
    for kind in ("II", "III"):
        while True:
            path = find_alternating_path(graph, forest, kind)
            if path is None:
                break
            forest = apply_alternating_path(graph, forest, path)
    return forest, compute_colorings(graph, forest)


def coloring_violations(graph: ConflictGraph, forest: StarForest, col: Colorings) -> list:
    """Every broken coloring condition, as readable strings; empty when all hold."""
    problems = []
    stars = forest.stars()
    vertex_set = set(range(graph.m))
    covered = set(stars) | set(forest.center_of)
    if covered != vertex_set:
        problems.append("forest does not span the graph")
    for leaf, c in forest.center_of.items():
        if not graph.has_edge(leaf, c):
            problems.append(f"forest edge {leaf}-{c} missing from graph")
        if leaf in forest.centers:
            problems.append(f"{leaf} is both leaf and center")
    for c, leaves in stars.items():
        if not leaves:
            problems.append(f"center {c} has no leaves")

    if not graph.is_independent(col.A1):
        problems.append("A1 not independent")
    for c, leaves in stars.items():
        inside = col.A1 & {c, *leaves}
        if len(leaves) == 1:
            ok = len(inside) == 1
        else:
            ok = inside == set(leaves)
        if not ok:
            problems.append(f"A1 is not a maximum independent set of star {c}")

    for name, a, b, full, partial in (("II", col.A2, col.B2, 3, 2), ("III", col.A3, col.B3, 4, 3)):
        if a & b:
            problems.append(f"{name}: A and B overlap")
        for v in a:
            if graph.neighbors(v) & (a | b):
                problems.append(f"{name}: A vertex {v} adjacent to A or B")
        for c, leaves in stars.items():
            size = len(leaves)
            star = {c, *leaves}
            leaf_max = set(leaves) <= a and c not in a
            if size >= full and not leaf_max:
                problems.append(f"{name}: leaves of S_{size} at {c} not in A")
            if size < partial and not star <= b:
                problems.append(f"{name}: S_{size} at {c} not in B")
            if size == partial and not (leaf_max or star <= b):
                problems.append(f"{name}: S_{size} at {c} unresolved")
    return problems


def _star_jobs(leaves: list, center: int, col: Colorings, segment: str) -> int:
    size = len(leaves)
    if segment == "A":
        return size
    if segment == "B":
        return size + 1
    leaf = leaves[0]
    if segment == "II":
        return 3 * size if leaf in col.A2 else 2 * (size + 1)
    return 4 * size if leaf in col.A3 else 3 * (size + 1)


def decompositions(M: int) -> list:
    """All (blocks, residue) with 12 * blocks + residue == M and a table row for residue."""
    out = []
    for r in RESIDUES:
        if r <= M and (M - r) % 12 == 0:
            out.append(((M - r) // 12, r))
    return out


def _segments(t: int, r: int) -> list:
    prefix, block = ROWS[r]
    segs = list(prefix)
    if block:
        segs.append(block)
    segs.extend(["III"] * t)
    return segs


def _capacity_of(forest: StarForest, col: Colorings, t: int, r: int) -> int:
    total = 0
    for c, leaves in forest.stars().items():
        for seg in _segments(t, r):
            total += _star_jobs(leaves, c, col, seg)
    return total


def _best_decomposition(forest: StarForest, col: Colorings, M: int):
    options = decompositions(M)
    if not options:
        raise ParameterError(f"no AB-schedule has makespan {M}")
    return max(options, key=lambda tr: (_capacity_of(forest, col, *tr), -tr[0]))


def capacity(forest: StarForest, colorings: Colorings, M: int) -> int:
    """Unit jobs the aligned AB-schedule of makespan ``M`` processes."""
    if M < 0:
        raise ParameterError("makespan must be non-negative")
    t, r = _best_decomposition(forest, colorings, M)
    return _capacity_of(forest, colorings, t, r)


def _ab_slots(graph: ConflictGraph, forest: StarForest, col: Colorings, t: int, r: int) -> list:
    xs, _ = bipartition(graph)
    vertices = range(graph.m)
    slots = []
    s = 0
    for seg in _segments(t, r):
        if seg == "A":
            slots.extend((v, s) for v in col.A1)
        elif seg == "B":
            slots.extend((v, s if v in xs else s + 1) for v in vertices)
        elif seg == "II":
            slots.extend((v, s + o) for v in col.A2 for o in (0, 3, 6))
            slots.extend((v, s + o + (0 if v in xs else 1)) for v in col.B2 for o in (0, 4))
        else:
            slots.extend((v, s + o) for v in col.A3 for o in (0, 3, 6, 9))
            slots.extend((v, s + o + (0 if v in xs else 1)) for v in col.B3 for o in (0, 4, 8))
        s += SEGMENT_LENGTH[seg]
    return sorted(slots, key=lambda sl: (sl[1], sl[0]))


def assemble_ab_schedule(graph: ConflictGraph, forest: StarForest, colorings: Colorings, M: int, n: int) -> Schedule:
    """Aligned AB-schedule of makespan at most ``M`` holding exactly ``n`` unit jobs.

    Every star runs the same plain segments at the same times; coloured
    blocks use the II/III colourings; B-patterns start colour class X one
    unit before class Y.  Surplus slots are dropped latest first.
    """
    t, r = _best_decomposition(forest, colorings, M)
    slots = _ab_slots(graph, forest, colorings, t, r)
    if len(slots) < n:
        raise InputError(f"makespan {M} holds only {len(slots)} jobs, {n} requested")
    schedule = Schedule.from_slots(slots[:n])
    instance = Instance.identical(graph, n)
    report = validate_schedule(instance, schedule)
    if not report.valid:
        raise AssertionError(f"assembled AB-schedule is infeasible: {report.violations[:3]}")
    return schedule


class _Component:
    """Capacity oracle and slot builder for one connected component."""

    def __init__(self, graph: ConflictGraph, vertices: list):
        self.vertices = vertices
        if len(vertices) == 1:
            self.sub = None
            return
        self.sub, _ = graph.induced(vertices)
        self.forest, self.col = build_star_forest(self.sub)
        self.rest = {r: _capacity_of(self.forest, self.col, 0, r) for r in RESIDUES}
        self.block = _capacity_of(self.forest, self.col, 1, 0)

    def exact(self, M: int) -> int:
        return max((self.rest[r] + t * self.block for t, r in decompositions(M)), default=-1)

    def best(self, M: int):
        """(capacity, makespan) of the best schedule finishing by M."""
        if self.sub is None:
            return M // Q, Q * (M // Q)
        best = (0, 0)
        for M2 in range(max(0, M - 11), M + 1):
            cap = self.exact(M2)
            if cap > best[0]:
                best = (cap, M2)
        return best

    def slots(self, M: int) -> list:
        if self.sub is None:
            return [(self.vertices[0], Q * i) for i in range(M // Q)]
        t, r = _best_decomposition(self.forest, self.col, M)
        local = _ab_slots(self.sub, self.forest, self.col, t, r)
        return [(self.vertices[v], s) for v, s in local]

    @property
    def rate(self) -> int:
        """Jobs per 12 time units."""
        return 4 if self.sub is None else self.block


def solve_unit_bipartite(graph: ConflictGraph, n: int):
    """Optimal unit-job schedule on a bipartite conflict graph: (makespan, schedule)."""
    if n == 0:
        return 0, Schedule()
    if graph.m == 0:
        raise InputError("no machines to schedule on")
    if not isinstance(bipartition(graph), tuple):
        raise InputError("graph must be bipartite")
    comps = [_Component(graph, vs) for vs in graph.components()]

    def total(M):
        return sum(c.best(M)[0] for c in comps)

    hi = 12 * math.ceil(n / sum(c.rate for c in comps))
    lo = 0
    while lo < hi:
        mid = (lo + hi) // 2
        if total(mid) >= n:
            hi = mid
        else:
            lo = mid + 1
    M = lo

    plans = sorted(
        ((c.best(M), c) for c in comps),
        key=lambda pc: (-pc[0][0], pc[1].vertices[0]),
    )
    slots = []
    left = n
    for (cap, M_c), comp in plans:
        if left <= 0:
            break
        take = min(cap, left)
        comp_slots = sorted(comp.slots(M_c), key=lambda sl: (sl[1], sl[0]))
        slots.extend(comp_slots[:take])
        left -= take
    schedule = Schedule.from_slots(slots)
    instance = Instance.identical(graph, n)
    report = validate_schedule(instance, schedule)
    if not report.valid:
        raise AssertionError(f"assembled schedule is infeasible: {report.violations[:3]}")
    return makespan(instance, schedule), schedule

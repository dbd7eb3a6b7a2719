"""Independent sets, bipartitions and matchings on conflict graphs."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .core import ConflictGraph, InputError, SizeLimitError

DEFAULT_CAP_M = 24


@dataclass(frozen=True)
class CIS:
    """``c`` pairwise disjoint independent sets (an induced c-colorable subgraph)."""

    classes: tuple

    def __post_init__(self):
        object.__setattr__(self, "classes", tuple(tuple(sorted(k)) for k in self.classes))

    @property
    def c(self) -> int:
        return len(self.classes)

    @property
    def size(self) -> int:
        return sum(len(k) for k in self.classes)

    def vertices(self) -> set:
        return {v for k in self.classes for v in k}

    def is_valid(self, graph: ConflictGraph) -> bool:
        seen = set()
        for k in self.classes:
            if seen & set(k) or not graph.is_independent(k):
                return False
            seen |= set(k)
        return True


def max_c_is_exact(graph: ConflictGraph, c: int, cap_m: int = DEFAULT_CAP_M) -> CIS:
    """Maximum induced c-colorable subgraph by exhaustive labelling.

    Each vertex gets one of ``c`` colours or is left out.  Colours are
    interchangeable, so a vertex may open at most one new colour, and a
    branch dies once its size plus the undecided vertices cannot beat the
    incumbent.  Inclusion is tried before exclusion, which makes the
    returned optimum deterministic.
    """
    if c < 1:
        raise InputError("c must be at least 1")
    m = graph.m
    if m > cap_m:
        raise SizeLimitError(f"exhaustive c-IS limited to {cap_m} machines, got {m}")
    if c >= m:
        # every vertex can get its own class
        return CIS(tuple((v,) for v in range(m)) + ((),) * (c - m))

    nbr = [0] * m
    for u, v in graph.edges:
        nbr[u] |= 1 << v
        nbr[v] |= 1 << u

    best_size = -1
    best: list = []
    masks = [0] * c

    def search(v: int, size: int, used: int) -> None:
        nonlocal best_size, best
        if size + (m - v) <= best_size:
            return
        if v == m:
            best_size = size
            best = list(masks)
            return
        bit = 1 << v
        for k in range(min(used + 1, c)):
            if not (nbr[v] & masks[k]):
                masks[k] |= bit
                search(v + 1, size + 1, max(used, k + 1))
                masks[k] &= ~bit
        search(v + 1, size, used)

    search(0, 0, 0)
    classes = tuple(tuple(v for v in range(m) if mask >> v & 1) for mask in best)
    return CIS(classes)


def greedy_1_is(graph: ConflictGraph) -> CIS:
    """Min-degree greedy independent set; ties go to the lowest vertex id."""
    alive = set(range(graph.m))
    chosen = []
    while alive:
        v = min(alive, key=lambda x: (len(graph.neighbors(x) & alive), x))
        chosen.append(v)
        alive -= graph.neighbors(v) | {v}
    return CIS((tuple(chosen),))


def greedy_c_is(graph: ConflictGraph, c: int) -> CIS:
    """Peel ``c`` greedy independent sets off the graph one after another."""
    remaining = list(range(graph.m))
    classes = []
    for _ in range(c):
        sub, labels = graph.induced(remaining)
        picked = [labels[v] for v in greedy_1_is(sub).classes[0]]
        classes.append(tuple(picked))
        taken = set(picked)
        remaining = [v for v in remaining if v not in taken]
    return CIS(tuple(classes))


def bipartition(graph: ConflictGraph):
    """Two-colour the graph by BFS layering.

    Returns ``(X, Y)`` as frozensets, or a list of vertices forming an odd
    cycle when the graph is not bipartite.  Each component's least vertex
    goes to ``X``, so isolated vertices land in ``X``.
    """
    color = {}
    parent = {}
    for s in range(graph.m):
        if s in color:
            continue
        color[s] = 0
        parent[s] = None
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in sorted(graph.neighbors(v)):
                if w not in color:
                    color[w] = 1 - color[v]
                    parent[w] = v
                    queue.append(w)
                elif color[w] == color[v]:
                    return _odd_cycle(v, w, parent)
    xs = frozenset(v for v, col in color.items() if col == 0)
    ys = frozenset(v for v, col in color.items() if col == 1)
    return xs, ys


def _odd_cycle(u: int, w: int, parent: dict) -> list:
    def chain(x):
        out = []
        while x is not None:
            out.append(x)
            x = parent[x]
        return out

    up, wp = chain(u), chain(w)
    common = set(up) & set(wp)
    head_u = []
    for x in up:
        head_u.append(x)
        if x in common:
            break
    lca = head_u[-1]
    head_w = []
    for x in wp:
        if x == lca:
            break
        head_w.append(x)
    return head_u + head_w[::-1]


def is_bipartite(graph: ConflictGraph) -> bool:
    return isinstance(bipartition(graph), tuple)


def max_matching_bipartite(graph: ConflictGraph) -> frozenset:
    """Maximum-cardinality matching via repeated augmenting-path search."""
    parts = bipartition(graph)
    if not isinstance(parts, tuple):
        raise InputError("matching requires a bipartite graph")
    left = sorted(parts[0])
    mate: dict = {}

    def augment(u: int, visited: set) -> bool:
        for w in sorted(graph.neighbors(u)):
            if w in visited:
                continue
            visited.add(w)
            if w not in mate or augment(mate[w], visited):
                mate[w] = u
                mate[u] = w
                return True
        return False

    for u in left:
        if u not in mate:
            augment(u, set())
    return frozenset((min(u, w), max(u, w)) for u, w in mate.items() if u in parts[0])


def is_matching(graph: ConflictGraph, matching: Iterable[tuple[int, int]]) -> bool:
    seen = set()
    for u, v in matching:
        if not graph.has_edge(u, v) or u in seen or v in seen:
            return False
        seen.update((u, v))
    return True


def konig_max_is(graph: ConflictGraph, matching: Iterable[tuple[int, int]]):
    """Minimum vertex cover ``U`` and maximum independent set ``V - U`` from a maximum matching.

    Alternating BFS from the unmatched vertices of the left side reaches a
    set ``Z``; the cover is the unreached left vertices plus the reached
    right vertices.
    """
    matching = frozenset((min(e), max(e)) for e in matching)
    parts = bipartition(graph)
    if not isinstance(parts, tuple):
        raise InputError("König's construction requires a bipartite graph")
    if not is_matching(graph, matching):
        raise InputError("not a matching of the graph")
    left, right = parts
    mate = {}
    for u, v in matching:
        mate[u], mate[v] = v, u
    reached = set()
    queue = deque(v for v in sorted(left) if v not in mate)
    reached.update(queue)
    while queue:
        v = queue.popleft()
        for w in sorted(graph.neighbors(v)):
            # left -> right along non-matching edges, right -> left along matching ones
            if w in reached or mate.get(v) == w:
                continue
            reached.add(w)
            if w in mate:
                partner = mate[w]
                if partner not in reached:
                    reached.add(partner)
                    queue.append(partner)
            else:
                raise InputError("matching is not maximum (augmenting path found)")
    cover = frozenset((left - reached) | (right & reached))
    if len(cover) != len(matching):
        raise InputError("matching is not maximum")
    independent = frozenset(range(graph.m)) - cover
    return cover, independent

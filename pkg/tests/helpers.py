"""Graph generators shared by the test modules."""

import random

import networkx as nx
from smcsched import ConflictGraph


def to_conflict_graph(g: nx.Graph) -> ConflictGraph:
    g = nx.convert_node_labels_to_integers(g)
    return ConflictGraph.from_edges(g.number_of_nodes(), g.edges())


def random_graph(rng: random.Random, m: int, density: float = 0.5) -> ConflictGraph:
    return ConflictGraph.from_edges(
        m, [(u, v) for u in range(m) for v in range(u + 1, m) if rng.random() < density]
    )


def random_connected_bipartite(rng: random.Random, m: int) -> ConflictGraph:
    """Random spanning tree on a random 2-colouring plus extra cross edges."""
    side = [0, 1] + [rng.randrange(2) for _ in range(m - 2)]
    order = list(range(m))
    rng.shuffle(order)
    edges = set()
    placed = [order[0]]
    for v in order[1:]:
        choices = [u for u in placed if side[u] != side[v]]
        if not choices:
            side[v] = 1 - side[placed[0]]
            choices = [u for u in placed if side[u] != side[v]]
        u = rng.choice(choices)
        edges.add((min(u, v), max(u, v)))
        placed.append(v)
    for u in range(m):
        for v in range(u + 1, m):
            if side[u] != side[v] and rng.random() < 0.25:
                edges.add((u, v))
    return ConflictGraph.from_edges(m, edges)


def connected_bipartite_atlas(max_m: int) -> list:
    out = []
    for g in nx.graph_atlas_g():
        m = g.number_of_nodes()
        if 2 <= m <= max_m and nx.is_connected(g) and nx.is_bipartite(g):
            out.append(to_conflict_graph(g))
    return out

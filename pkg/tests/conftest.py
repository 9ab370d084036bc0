from __future__ import annotations

import itertools
import random

import networkx as nx
import pytest
from hypothesis import strategies as st

from gpcactus.graph import Graph, build_graph


def random_connected_graph(n: int, p: float, rng: random.Random) -> Graph:
    """Random spanning tree plus independent extra edges with probability ``p``."""
    edges = {(rng.randrange(i), i) for i in range(1, n)}
    for u, v in itertools.combinations(range(n), 2):
        if (u, v) not in edges and rng.random() < p:
            edges.add((u, v))
    return build_graph(n, sorted(edges))


@st.composite
def connected_graphs(draw, min_n: int = 1, max_n: int = 10) -> Graph:
    n = draw(st.integers(min_n, max_n))
    parents = [draw(st.integers(0, i - 1)) for i in range(1, n)]
    edges = {(p, i) for i, p in enumerate(parents, start=1)}
    pairs = [pr for pr in itertools.combinations(range(n), 2) if pr not in edges]
    extra = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    return build_graph(n, sorted(edges | set(extra)))


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.vertex_count))
    h.add_edges_from(g.edges())
    return h


def brute_gp(g: Graph) -> int:
    """gp by networkx geodesic enumeration and plain subset search."""
    h = to_nx(g)
    nodes = list(range(g.vertex_count))
    on = {}
    for a, b in itertools.combinations(nodes, 2):
        verts = {v for path in nx.all_shortest_paths(h, a, b) for v in path}
        on[a, b] = on[b, a] = verts
    for k in range(len(nodes), 0, -1):
        for s in itertools.combinations(nodes, k):
            if all(c not in on[a, b] for a, b, c in itertools.permutations(s, 3)):
                return k
    return 0


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240601)

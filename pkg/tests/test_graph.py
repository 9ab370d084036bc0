from __future__ import annotations

import itertools

import networkx as nx
import pytest
from hypothesis import given, settings

from gpcactus.graph import (
    UNREACHABLE,
    InvalidVertex,
    NotSimple,
    ParseError,
    Unreachable,
    all_pairs_distances,
    build_graph,
    interval,
    is_connected,
    parse_edge_list,
)

from conftest import connected_graphs, to_nx

C3 = build_graph(3, [(0, 1), (1, 2), (2, 0)])
C4 = build_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
P3 = build_graph(3, [(0, 1), (1, 2)])
P5 = build_graph(5, [(i, i + 1) for i in range(4)])


def test_build_triangle():
    assert C3.edge_count == 3
    assert C3.adjacency == ((1, 2), (0, 2), (0, 1))


def test_build_single_vertex():
    g = build_graph(1, [])
    assert g.vertex_count == 1 and g.edge_count == 0


def test_build_c4_degrees():
    assert C4.degrees() == [2, 2, 2, 2]


@pytest.mark.parametrize(
    "n, edges, exc",
    [
        (3, [(0, 3)], InvalidVertex),
        (3, [(-1, 0)], InvalidVertex),
        (3, [(1, 1)], NotSimple),
        (3, [(0, 1), (1, 0)], NotSimple),
    ],
)
def test_build_rejects(n, edges, exc):
    with pytest.raises(exc):
        build_graph(n, edges)


def test_parse_triangle():
    assert parse_edge_list("3\n0 1\n1 2\n2 0\n") == C3


def test_parse_k2():
    g = parse_edge_list("2\n0 1\n")
    assert g.edges() == [(0, 1)]


def test_parse_duplicate_edge():
    with pytest.raises(NotSimple):
        parse_edge_list("3\n0 1\n0 1\n")


def test_parse_comments_blank_crlf():
    text = "# a triangle\r\n3\r\n\r\n0 1\r\n# mid comment\r\n1 2\r\n2 0\r\n"
    assert parse_edge_list(text) == C3


@pytest.mark.parametrize(
    "text, line",
    [("", 1), ("x\n", 1), ("3\n0 1 2\n", 2), ("3\n0 1\n0 a\n", 3), ("# c\n3\n0\n", 3)],
)
def test_parse_errors_carry_line(text, line):
    with pytest.raises(ParseError) as info:
        parse_edge_list(text)
    assert info.value.line == line


def test_edge_list_roundtrip():
    g = build_graph(5, [(3, 4), (0, 2), (1, 4)])
    assert parse_edge_list(g.to_edge_list()) == g


def test_distances_examples():
    assert all_pairs_distances(C4)[0][2] == 2
    assert all_pairs_distances(build_graph(2, [(0, 1)]))[0][1] == 1
    assert all_pairs_distances(P5)[0][4] == 4


def test_unreachable_marker():
    d = all_pairs_distances(build_graph(4, [(0, 1), (2, 3)]))
    assert d[0][2] is UNREACHABLE
    assert not d.connected(0, 3)
    with pytest.raises(Unreachable):
        interval(d, 0, 3)


def test_interval_examples():
    assert interval(all_pairs_distances(P3), 0, 2) == {0, 1, 2}
    assert interval(all_pairs_distances(C4), 0, 2) == {0, 1, 2, 3}
    d = all_pairs_distances(C4)
    assert all(interval(d, x, x) == {x} for x in range(4))


@pytest.mark.parametrize(
    "g, expected",
    [
        (build_graph(5, [(i, (i + 1) % 5) for i in range(5)]), True),
        (build_graph(4, [(0, 1), (2, 3)]), False),
        (build_graph(1, []), True),
        (build_graph(0, []), True),
    ],
)
def test_is_connected(g, expected):
    assert is_connected(g) is expected


@settings(max_examples=150, deadline=None)
@given(connected_graphs(max_n=12))
def test_metric_axioms(g):
    d = all_pairs_distances(g)
    n = g.vertex_count
    for u in range(n):
        assert d[u][u] == 0
        for v in range(n):
            assert d[u][v] == d[v][u]
            assert (d[u][v] == 1) == g.has_edge(u, v)
            for w in range(n):
                assert d[u][w] <= d[u][v] + d[v][w]


@settings(max_examples=100, deadline=None)
@given(connected_graphs(max_n=12))
def test_distances_match_networkx(g):
    d = all_pairs_distances(g)
    ref = dict(nx.all_pairs_shortest_path_length(to_nx(g)))
    assert all(d[u][v] == ref[u][v] for u in range(g.vertex_count) for v in range(g.vertex_count))


@settings(max_examples=100, deadline=None)
@given(connected_graphs(max_n=12))
def test_interval_symmetric_and_contains_ends(g):
    d = all_pairs_distances(g)
    for x, y in itertools.product(range(g.vertex_count), repeat=2):
        iv = interval(d, x, y)
        assert iv == interval(d, y, x)
        assert {x, y} <= iv


@settings(max_examples=100, deadline=None)
@given(connected_graphs(max_n=12))
def test_interval_on_spanning_tree_is_unique_path(g):
    tree = nx.bfs_tree(to_nx(g), 0).to_undirected()
    t = build_graph(g.vertex_count, sorted(tuple(sorted(e)) for e in tree.edges()))
    d = all_pairs_distances(t)
    for x, y in itertools.combinations(range(t.vertex_count), 2):
        assert len(interval(d, x, y)) == d[x][y] + 1


def _all_geodesic_vertices(g, x, y):
    """Independent oracle: explicit depth-first enumeration of every shortest x,y-path."""
    paths = []
    frontier = [[x]]
    while frontier:
        nxt = []
        for path in frontier:
            if path[-1] == y:
                paths.append(path)
                continue
            for w in g.adjacency[path[-1]]:
                if w not in path:
                    nxt.append(path + [w])
        if paths:
            break
        frontier = nxt
    return {v for p in paths for v in p}


@settings(max_examples=100, deadline=None)
@given(connected_graphs(max_n=8))
def test_interval_matches_path_enumeration(g):
    d = all_pairs_distances(g)
    for x, y in itertools.product(range(g.vertex_count), repeat=2):
        assert interval(d, x, y) == _all_geodesic_vertices(g, x, y)

from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gpcactus.families import gen_cycle, gen_path, gen_star, gen_wheel
from gpcactus.graph import all_pairs_distances, build_graph
from gpcactus.solver import (
    ConflictTriple,
    Disconnected,
    GpCertificate,
    Method,
    SolverTimeout,
    TooLarge,
    branch_order,
    conflict_triples,
    gp_number_exact,
    gp_number_naive,
    greedy_general_position,
    is_general_position,
    maximum_gp_sets,
)

from conftest import brute_gp, connected_graphs, random_connected_graph

C3, C4, C5, P3 = gen_cycle(3), gen_cycle(4), gen_cycle(5), gen_path(3)


def test_small_sets_always_in_general_position():
    d = all_pairs_distances(C5)
    for k in range(3):
        for s in itertools.combinations(range(5), k):
            assert is_general_position(d, s)


def test_path_middle_breaks_general_position():
    assert not is_general_position(all_pairs_distances(P3), {0, 1, 2})


def test_c4_three_vertices_not_in_general_position():
    assert not is_general_position(all_pairs_distances(C4), {0, 1, 2})


def test_conflict_triples_examples():
    assert conflict_triples(all_pairs_distances(C3)) == []
    assert conflict_triples(all_pairs_distances(P3)) == [ConflictTriple(0, 1, 2)]
    # five, by brute force over all ten triples of C5
    triples = conflict_triples(all_pairs_distances(C5))
    assert len(triples) == 5
    assert sorted(t.middle for t in triples) == [0, 1, 2, 3, 4]
    assert triples == sorted(triples)


@settings(max_examples=100, deadline=None)
@given(connected_graphs(max_n=9))
def test_conflict_triples_have_valid_middles(g):
    d = all_pairs_distances(g)
    seen = set()
    for a, m, b in conflict_triples(d):
        assert len({a, m, b}) == 3 and a < b
        assert d[a][m] + d[m][b] == d[a][b]
        key = frozenset((a, m, b))
        assert key not in seen
        seen.add(key)


@settings(max_examples=60, deadline=None)
@given(connected_graphs(max_n=8), st.data())
def test_general_position_iff_no_triple_inside(g, data):
    d = all_pairs_distances(g)
    triples = [frozenset(t) for t in conflict_triples(d)]
    s = frozenset(data.draw(st.sets(st.integers(0, g.vertex_count - 1))))
    assert is_general_position(d, s) == (not any(t <= s for t in triples))


@settings(max_examples=60, deadline=None)
@given(connected_graphs(max_n=10), st.randoms(use_true_random=False))
def test_downward_closure(g, rnd):
    d = all_pairs_distances(g)
    best = gp_number_exact(g).witness
    for _ in range(10):
        sub = {v for v in best if rnd.random() < 0.5}
        assert is_general_position(d, sub)


@pytest.mark.parametrize(
    "g, value",
    [(C4, 2), (C5, 3), (build_graph(1, []), 1), (build_graph(2, [(0, 1)]), 2), (C3, 3)],
)
def test_naive_examples(g, value):
    cert = gp_number_naive(g)
    assert cert.value == value
    assert cert.method is Method.NAIVE


def test_naive_witness_is_lexicographically_least():
    # every pair of a path is a gp-set; the least is {0, 1}
    assert gp_number_naive(gen_path(6)).sorted_witness() == [0, 1]
    value, sets = maximum_gp_sets(gen_path(6))
    assert value == 2 and min(tuple(sorted(s)) for s in sets) == (0, 1)


def test_naive_limit():
    with pytest.raises(TooLarge):
        gp_number_naive(gen_path(17))
    assert gp_number_naive(gen_path(12), limit=12).value == 2


def test_disconnected_rejected():
    g = build_graph(4, [(0, 1), (2, 3)])
    with pytest.raises(Disconnected):
        gp_number_exact(g)
    with pytest.raises(Disconnected):
        gp_number_naive(g)


@pytest.mark.parametrize("g, value", [(gen_star(5), 5), (gen_wheel(6), 4), (gen_path(7), 2)])
def test_exact_examples(g, value):
    cert = gp_number_exact(g)
    assert cert.value == value
    assert cert.method is Method.EXACT
    assert is_general_position(all_pairs_distances(g), cert.witness)


def test_exact_matches_independent_brute_force():
    rng = random.Random(5)
    for _ in range(25):
        g = random_connected_graph(rng.randint(3, 8), rng.random() * 0.6, rng)
        assert gp_number_exact(g).value == brute_gp(g)


def test_oracle_equivalence_random_graphs():
    rng = random.Random(11)
    for _ in range(120):
        g = random_connected_graph(rng.randint(1, 10), rng.random(), rng)
        exact, naive = gp_number_exact(g), gp_number_naive(g)
        assert exact.value == naive.value
        d = all_pairs_distances(g)
        assert is_general_position(d, exact.witness)
        assert is_general_position(d, naive.witness)


def test_refined_bound_agrees():
    rng = random.Random(3)
    for _ in range(60):
        g = random_connected_graph(rng.randint(3, 12), rng.random() * 0.5, rng)
        assert gp_number_exact(g, refine_bound=True).value == gp_number_exact(g).value


def test_greedy_examples():
    assert greedy_general_position(all_pairs_distances(C3), [0, 1, 2]) == {0, 1, 2}
    assert greedy_general_position(all_pairs_distances(P3), [0, 1, 2]) == {0, 1}
    with pytest.raises(ValueError):
        greedy_general_position(all_pairs_distances(P3), [0, 1])


@settings(max_examples=80, deadline=None)
@given(connected_graphs(max_n=10), st.randoms(use_true_random=False))
def test_greedy_is_valid_maximal_and_below_exact(g, rnd):
    d = all_pairs_distances(g)
    order = list(range(g.vertex_count))
    rnd.shuffle(order)
    s = greedy_general_position(d, order)
    assert is_general_position(d, s)
    assert len(s) <= gp_number_exact(g).value
    for v in set(range(g.vertex_count)) - s:
        assert not is_general_position(d, s | {v})


def test_branch_order_deterministic():
    assert branch_order(gen_star(3)) == [0, 1, 2, 3]
    assert branch_order(gen_wheel(4))[0] == 4


def test_exact_timeout():
    rng = random.Random(0)
    g = random_connected_graph(60, 0.08, rng)
    with pytest.raises(SolverTimeout) as info:
        gp_number_exact(g, timeout=0.05)
    assert is_general_position(all_pairs_distances(g), info.value.best)


def test_certificate_invariant():
    with pytest.raises(ValueError):
        GpCertificate(3, frozenset({0, 1}), Method.EXACT)
    cert = GpCertificate(2, frozenset({0, 1}), Method.CLOSED_FORM, "tree")
    assert cert.label == "ClosedForm(tree)"


def test_maximum_sets_of_c4():
    value, sets = maximum_gp_sets(C4)
    # any pair of C4 lies on a geodesic with no third member, and no triple works
    assert value == 2 and len(sets) == 6

"""Hypergraph representation, queries, generators, and serialization."""

import itertools
import warnings

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import naive
from hypermatch.hypergraph import (
    Hypergraph,
    anchored_barrier,
    build,
    complete,
    parity_barrier_even,
    parity_barrier_odd,
    parse,
    random_dense,
    serialize,
    space_barrier,
)


def test_build_canonicalizes_and_deduplicates():
    H = build(5, 3, [(2, 1, 0), (0, 1, 2), (4, 3, 2)])
    assert H.edges == ((0, 1, 2), (2, 3, 4))
    assert H.n == 5 and H.k == 3


def test_build_rejects_bad_edges():
    with pytest.raises(ValueError):
        build(5, 3, [(0, 1)])
    with pytest.raises(ValueError):
        build(5, 3, [(0, 1, 1)])
    with pytest.raises(ValueError):
        build(5, 3, [(0, 1, 5)])
    with pytest.raises(ValueError):
        build(5, 1, [])


def test_vacuous_uniformity_larger_than_n():
    H = build(2, 4, [])
    assert H.edges == ()


def test_degree_of_set_counts_containing_edges():
    H = complete(6, 3)
    assert H.degree_of_set({0, 1}) == 4
    assert H.degree_of_set({0}) == 10
    assert H.degree_of_set(set()) == len(H.edges)
    assert H.degree_of_set({0, 1, 2}) == 1
    with pytest.raises(ValueError):
        H.degree_of_set({0, 1, 2, 3})
    with pytest.raises(ValueError):
        H.degree_of_set({0, 6})


def test_min_codegree_complete():
    # every (k-1)-set extends by any of the n-k+1 remaining vertices
    for n, k in [(6, 3), (9, 3), (8, 4)]:
        assert complete(n, k).min_codegree() == n - k + 1


def test_min_codegree_requires_enough_vertices():
    with pytest.raises(ValueError):
        build(1, 3, []).min_codegree()


def test_min_codegree_zero_when_a_pair_is_uncovered():
    H = build(6, 3, [(0, 1, 2)])
    assert H.min_codegree() == 0


def test_space_barrier_matches_definition():
    H = space_barrier(9, 3, 2)
    expected = {e for e in itertools.combinations(range(9), 3)
                if set(e) & {0, 1}}
    assert set(H.edges) == expected
    assert len(H.edges) == 49  # C(9,3) - C(7,3) = 84 - 35
    # frozen: the codegree of the construction equals s
    assert naive.naive_min_codegree(9, 3, H.edges) == 2
    assert H.min_codegree() == 2
    # two non-barrier vertices extend only through the barrier
    assert H.degree_of_set({5, 7}) == 2


def test_space_barrier_warns_when_s_too_large():
    with pytest.warns(UserWarning):
        space_barrier(9, 3, 3)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        space_barrier(9, 3, 2)


def test_space_barrier_zero_is_edgeless():
    assert space_barrier(9, 3, 0).edges == ()


def test_parity_barrier_odd_matches_definition():
    H = parity_barrier_odd(9, 3, 2)
    X = {0, 1}
    expected = {e for e in itertools.combinations(range(9), 3)
                if len(X & set(e)) % 2 == 1}
    assert set(H.edges) == expected
    assert len(H.edges) == 42  # 2*C(7,2), the all-inside class is empty
    # frozen: a pair inside X extends only to even-intersection triples
    assert naive.naive_degree(H.edges, {0, 1}) == 0
    assert H.min_codegree() == 0


def test_parity_barrier_odd_12_7_meets_codegree_threshold():
    H = parity_barrier_odd(12, 3, 7)
    assert len(H.edges) == 105  # 7*C(5,2) + C(7,3)
    # frozen: delta_2 = 4 = n/3, attained by pairs with one vertex in X
    assert naive.naive_min_codegree(12, 3, H.edges) == 4
    assert H.min_codegree() == 4


def test_parity_barrier_even_matches_definition():
    H = parity_barrier_even(12, 3, 5)
    X = set(range(5))
    expected = {e for e in itertools.combinations(range(12), 3)
                if len(X & set(e)) % 2 == 0}
    assert set(H.edges) == expected
    assert len(H.edges) == 105  # C(5,2)*7 + C(7,3)
    # frozen: delta_2 = 4, attained by cross pairs
    assert naive.naive_min_codegree(12, 3, H.edges) == 4
    assert H.min_codegree() == 4


def test_anchored_barrier_structure():
    H = anchored_barrier(12)
    assert (H.n, H.k) == (12, 4)
    # parts are 0..1 | 2..5 | 6..11 and the anchor is vertex 2
    parts = (set(range(2)), set(range(2, 6)), set(range(6, 12)))
    free = {(3, 0, 1), (0, 3, 1), (0, 0, 4), (2, 2, 0), (1, 1, 2)}
    expected = set()
    for e in itertools.combinations(range(12), 4):
        prof = tuple(len(set(e) & p) for p in parts)
        if prof in free or (prof == (0, 1, 3) and 2 in e):
            expected.add(e)
    assert set(H.edges) == expected
    # frozen: 24 + 15 + 6 + 120 + 20 profile-class sizes
    assert len(H.edges) == 185
    # frozen: codegree bottoms out at 0 (the smallest part has only 2
    # vertices, so several profiles are unrealizable at this n)
    assert naive.naive_min_codegree(12, 4, H.edges) == 0
    assert H.min_codegree() == 0


def test_anchored_barrier_rejects_bad_n():
    with pytest.raises(ValueError):
        anchored_barrier(10)
    with pytest.raises(ValueError):
        anchored_barrier(0)


def test_random_dense_is_deterministic_and_repaired():
    H1 = random_dense(10, 3, 3, seed=7)
    H2 = random_dense(10, 3, 3, seed=7)
    assert H1 == H2
    assert H1.min_codegree() >= 3
    H3 = random_dense(10, 3, 3, seed=8)
    assert H1 != H3  # overwhelmingly likely and pinned by the fixed seeds


def test_random_dense_rejects_unreachable_target():
    with pytest.raises(ValueError):
        random_dense(9, 3, 8, seed=0)


def test_induced_complete_and_identity():
    K5 = complete(5, 3)
    sub = K5.induced({0, 1, 2})
    assert sub == complete(3, 3)
    assert sub.index_map == (0, 1, 2)
    assert K5.induced(range(5)) == K5


def test_induced_reindexes_order_preservingly():
    H = build(6, 3, [(1, 3, 5), (0, 2, 4)])
    sub = H.induced({1, 3, 5})
    assert sub.n == 3
    assert sub.edges == ((0, 1, 2),)
    assert sub.index_map == (1, 3, 5)


def test_induced_complement_of_barrier_is_edgeless():
    H = space_barrier(9, 3, 2)
    assert H.induced(range(2, 9)).edges == ()


def test_serialize_parse_round_trip_and_comments():
    H = parity_barrier_odd(9, 3, 2)
    text = serialize(H)
    assert text.splitlines()[0] == "9 3"
    assert parse(text) == H
    commented = "# generated instance\n" + text + "\n# trailing note\n"
    assert parse(commented) == H


def test_serialize_is_canonical():
    H1 = build(5, 3, [(2, 3, 4), (0, 1, 2)])
    H2 = build(5, 3, [(0, 1, 2), (2, 3, 4)])
    assert serialize(H1) == serialize(H2)


def test_parse_rejects_malformed_input():
    with pytest.raises(ValueError):
        parse("")
    with pytest.raises(ValueError):
        parse("9\n0 1 2\n")
    with pytest.raises(ValueError):
        parse("9 3\n0 1\n")
    with pytest.raises(ValueError):
        parse("9 3\n0 1 two\n")


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=3, max_value=9), st.data())
def test_round_trip_random_graphs(n, data):
    edges = data.draw(st.lists(
        st.lists(st.integers(min_value=0, max_value=n - 1),
                 min_size=3, max_size=3, unique=True),
        max_size=20))
    H = build(n, 3, edges)
    assert parse(serialize(H)) == H


@pytest.mark.parametrize("n", range(4, 10))
def test_degree_of_set_agrees_with_naive_on_random(n):
    H = random_dense(n, 3, 0, seed=n)
    for s in itertools.combinations(range(n), 2):
        assert H.degree_of_set(s) == naive.naive_degree(H.edges, s)

"""Reachability counts, partition construction, mu selection, merging."""

import itertools
from fractions import Fraction

import pytest

import naive
from hypermatch.hypergraph import (
    Hypergraph,
    anchored_barrier,
    build,
    complete,
    parity_barrier_even,
    parity_barrier_odd,
    random_dense,
)
from hypermatch.lattice import Partition, lattice_contains, lattice_from
from hypermatch.reachability import (
    CodegreeHypothesisError,
    PipelineConfig,
    PipelineInvariantError,
    closed_partition,
    common_neighborhood_count,
    merge_transferrals,
    reachable_pair,
    run_pipeline,
    select_mu,
)


def two_components(half, k):
    """Disjoint union of two complete k-graphs on half vertices each."""
    shift = [tuple(v + half for v in e) for e in complete(half, k).edges]
    return build(2 * half, k, list(complete(half, k).edges) + shift)


# -- configuration ------------------------------------------------------------


def test_config_defaults_and_levels():
    cfg = PipelineConfig()
    assert cfg.gamma == Fraction(1, 20)
    assert cfg.beta(0) == Fraction(1, 20)
    assert cfg.beta(1) == Fraction(1, 80)
    assert cfg.levels(3) == 3
    assert cfg.levels(4) == 5


def test_config_ladder_override():
    cfg = PipelineConfig(beta_ladder=(Fraction(1, 40), Fraction(1, 10000)))
    assert cfg.beta(0) == Fraction(1, 40)
    assert cfg.beta(1) == Fraction(1, 10000)
    assert cfg.beta(2) == Fraction(1, 20) * Fraction(1, 16)


def test_config_rejects_bad_values():
    with pytest.raises(ValueError):
        PipelineConfig(gamma=Fraction(3, 2))
    with pytest.raises(ValueError):
        PipelineConfig(alpha=0)
    with pytest.raises(ValueError):
        PipelineConfig(beta_ladder=(Fraction(1, 20), Fraction(1, 20)))
    with pytest.raises(ValueError):
        PipelineConfig(t_cap=0)
    with pytest.raises(ValueError):
        PipelineConfig(gamma=Fraction(1, 3)).levels(3)


# -- reachability counts -------------------------------------------------------


def test_common_neighborhood_complete():
    H = complete(7, 3)
    for u, v in itertools.combinations(range(7), 2):
        assert common_neighborhood_count(H, u, v) == 10  # C(5, 2)


def test_common_neighborhood_single_edge():
    H = build(5, 3, [(0, 1, 2)])
    assert common_neighborhood_count(H, 0, 1) == 0
    assert common_neighborhood_count(H, 0, 3) == 0
    with pytest.raises(ValueError):
        common_neighborhood_count(H, 2, 2)


def test_common_neighborhood_matches_exhaustive_count():
    H = parity_barrier_even(6, 3, 2)
    for u, v in itertools.combinations(range(6), 2):
        brute = sum(
            1 for S in itertools.combinations(set(range(6)) - {u, v}, 2)
            if tuple(sorted(S + (u,))) in H.edge_set
            and tuple(sorted(S + (v,))) in H.edge_set)
        assert common_neighborhood_count(H, u, v) == brute
        assert brute == naive.naive_common_neighborhood(6, 3, H.edges, u, v)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_common_neighborhood_matches_naive_on_random(seed):
    H = random_dense(8, 3, 2, seed=seed)
    for u, v in itertools.combinations(range(8), 2):
        got = common_neighborhood_count(H, u, v)
        assert got == naive.naive_common_neighborhood(8, 3, H.edges, u, v)


def test_reachable_pair_complete_and_edgeless():
    K = complete(8, 3)
    assert all(reachable_pair(K, u, v, 1, Fraction(1, 1000))
               for u, v in itertools.combinations(range(8), 2))
    empty = build(8, 3, [])
    assert not reachable_pair(empty, 0, 1, 1, Fraction(1, 1000))
    assert not reachable_pair(empty, 0, 1, 2, Fraction(1, 1000))


def test_reachable_pair_threshold_pins_exact_order_one_count():
    H = parity_barrier_even(9, 3, 4)
    n = H.n
    for u, v in [(0, 1), (0, 4), (4, 5)]:
        count = naive.naive_common_neighborhood(n, 3, H.edges, u, v)
        if count > 0:
            assert reachable_pair(H, u, v, 1, Fraction(count, n ** 2))
        assert not reachable_pair(H, u, v, 1, Fraction(count + 1, n ** 2))


def test_reachable_pair_threshold_pins_exact_order_two_count():
    H = parity_barrier_even(8, 3, 4)
    n = H.n
    for u, v in [(0, 1), (0, 4)]:
        count = naive.naive_reach_count(n, 3, H.edges, u, v, 2)
        if count > 0:
            assert reachable_pair(H, u, v, 2, Fraction(count, n ** 5))
        assert not reachable_pair(H, u, v, 2, Fraction(count + 1, n ** 5))


def test_reachable_pair_rejects_bad_arguments():
    H = complete(6, 3)
    with pytest.raises(ValueError):
        reachable_pair(H, 2, 2, 1, Fraction(1, 2))
    with pytest.raises(ValueError):
        reachable_pair(H, 0, 1, 0, Fraction(1, 2))
    with pytest.raises(ValueError):
        reachable_pair(H, 0, 1, 2, Fraction(1, 2))  # needs 5 + 2 vertices


def test_reachability_cascade_order_one_to_two():
    # with a steep enough ladder, order-1 reachability implies order-2
    beta0, beta1 = Fraction(1, 20), Fraction(1, 100000)
    instances = [
        complete(9, 3),
        parity_barrier_even(9, 3, 4),
        random_dense(9, 3, 3, seed=5),
    ]
    for H in instances:
        for u, v in itertools.combinations(range(H.n), 2):
            if reachable_pair(H, u, v, 1, beta0):
                assert reachable_pair(H, u, v, 2, beta1)


# -- closed partition ----------------------------------------------------------


def test_closed_partition_complete_is_trivial():
    assert closed_partition(complete(9, 3), PipelineConfig()) == Partition(
        [range(9)])


def test_closed_partition_requires_codegree():
    with pytest.raises(CodegreeHypothesisError):
        closed_partition(parity_barrier_odd(9, 3, 2), PipelineConfig())


def test_closed_partition_separates_disjoint_components():
    H = two_components(5, 3)
    cfg = PipelineConfig(
        beta_ladder=(Fraction(1, 40), Fraction(1, 10000), Fraction(1, 100000)),
        require_codegree=False)
    P = closed_partition(H, cfg)
    assert P == Partition([range(5), range(5, 10)])


def test_closed_partition_recovers_parity_sides():
    H = parity_barrier_even(12, 3, 5)
    P = closed_partition(H, PipelineConfig())
    assert P == Partition([range(5), range(5, 12)])


def test_closed_partition_recovers_sides_of_odd_instance():
    H = parity_barrier_odd(9, 3, 2)
    cfg = PipelineConfig(require_codegree=False)
    P = closed_partition(H, cfg)
    assert P == Partition([range(2), range(2, 9)])


# -- mu selection --------------------------------------------------------------


def test_select_mu_fixed_point_on_complete():
    H = complete(9, 3)
    assert select_mu(H, Partition([range(9)]), Fraction(1, 100)) == Fraction(
        1, 100)


def test_select_mu_shrinks_until_stable():
    H = anchored_barrier(12)
    P = Partition([range(2), range(2, 6), range(6, 12)])
    # brute class counts drive the expected trajectory
    counts = {}
    for e in H.edges:
        iv = tuple(sum(1 for x in e if lo <= x < hi)
                   for lo, hi in [(0, 2), (2, 6), (6, 12)])
        counts[iv] = counts.get(iv, 0) + 1
    assert counts == {(0, 3, 1): 24, (0, 0, 4): 15, (2, 2, 0): 6,
                      (1, 1, 2): 120, (0, 1, 3): 20}
    K = (H.k + 1) ** (P.d - 1)
    assert K == 25

    def robust(mu):
        return {iv for iv, c in counts.items() if c >= mu * 12 ** 4}

    mu, steps = Fraction(1, 100), 0
    while robust(mu) != robust(mu / K):
        mu /= K
        steps += 1
    got = select_mu(H, P, Fraction(1, 100))
    assert got == mu
    assert steps <= 15  # C(k + d - 1, k) = C(6, 4)


def test_select_mu_iteration_lower_bound():
    # the selected mu never drops below mu0 * K^(-C(k+d-1,k))
    H = anchored_barrier(12)
    P = Partition([range(2), range(2, 6), range(6, 12)])
    mu = select_mu(H, P, Fraction(1, 100))
    K = (H.k + 1) ** (P.d - 1)
    assert mu >= Fraction(1, 100) * Fraction(K) ** -15


# -- transferral merging -------------------------------------------------------


def test_merge_transferrals_collapses_complete_split():
    H = complete(9, 3)
    P = Partition([range(4), range(4, 9)])
    mu = select_mu(H, P, Fraction(1, 100))
    merged, trace = merge_transferrals(H, P, mu)
    assert merged == Partition([range(9)])
    assert trace == ((0, 1),)


def test_merge_transferrals_keeps_transferral_free_partition():
    H = parity_barrier_even(12, 3, 5)
    P = Partition([range(5), range(5, 12)])
    merged, trace = merge_transferrals(H, P, Fraction(1, 100))
    assert merged == P
    assert trace == ()


def test_merge_count_is_bounded_by_parts_minus_one():
    H = complete(8, 4)
    P = Partition([(0, 4, 5, 6, 7), (1,), (2,), (3,)])
    mu = select_mu(H, P, Fraction(1, 100))
    merged, trace = merge_transferrals(H, P, mu)
    assert merged == Partition([range(8)])
    assert len(trace) <= P.d - 1


# -- full pipeline -------------------------------------------------------------


def test_run_pipeline_on_complete_graph():
    result = run_pipeline(complete(9, 3), PipelineConfig())
    assert result.p0 == result.p0_prime == Partition([range(9)])
    assert result.robust_set == {(3,)}
    assert result.mu == Fraction(1, 100)
    assert result.merge_trace == ()
    assert result.violations == ()


def test_run_pipeline_on_parity_instance():
    result = run_pipeline(parity_barrier_even(12, 3, 5), PipelineConfig())
    assert result.p0_prime == Partition([range(5), range(5, 12)])
    assert result.robust_set == {(2, 1), (0, 3)}
    assert result.violations == ()
    L = result.lattice
    assert lattice_contains(L, (2, 1)) and not lattice_contains(L, (1, 2))


def test_run_pipeline_records_violations_below_floor():
    result = run_pipeline(complete(8, 4), PipelineConfig(validity_floor=100))
    assert result.p0.d == 5
    assert result.p0_prime == Partition([range(8)])
    assert result.robust_set == {(4,)}
    assert any("below n/k" in v for v in result.violations)


def test_run_pipeline_raises_above_floor():
    with pytest.raises(PipelineInvariantError):
        run_pipeline(complete(8, 4), PipelineConfig(validity_floor=0))


def test_run_pipeline_is_deterministic():
    cfg = PipelineConfig()
    a = run_pipeline(parity_barrier_even(12, 3, 5), cfg)
    b = run_pipeline(parity_barrier_even(12, 3, 5), cfg)
    assert a == b


def test_membership_transfer_between_partitions():
    # sets whose merged-partition index lies in the merged robust lattice
    # must index into the initial robust lattice as well
    import random

    from hypermatch.lattice import index_vector, robust_index_set

    for H in [complete(9, 3), parity_barrier_even(12, 3, 5)]:
        result = run_pipeline(H, PipelineConfig())
        fine = lattice_from(
            sorted(robust_index_set(H, result.p0, result.mu)), d=result.p0.d)
        coarse = result.lattice
        rng = random.Random(7)
        for _ in range(50):
            D = [v for v in range(H.n) if rng.random() < 0.5]
            if lattice_contains(coarse, index_vector(result.p0_prime, D)):
                assert lattice_contains(fine, index_vector(result.p0, D))

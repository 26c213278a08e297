"""Reachability relation and the partition pipeline built on it.

Two vertices are reachable at order i when many (ik-1)-sets extend both to
a perfectly matchable set.  Closing this relation over a ladder of
thresholds yields an initial partition; a robustness threshold mu is then
chosen so the set of well-represented edge classes is stable under one
more refinement step, and parts are merged while the resulting lattice
contains a transferral.  The outcome is an ordered partition whose robust
edge-class lattice is expected to form a full pair.

Threshold comparisons are exact: integer counts are compared against
fraction * n^e by cross-multiplication, so no floating point is involved.
The asymptotic guarantees of the construction are enforced at or above a
configurable vertex-count floor and recorded as violations below it.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

import numpy as np

from . import _kernels
from .hypergraph import Hypergraph
from .lattice import (
    EdgeLattice,
    Partition,
    find_transferral,
    is_full_pair,
    lattice_from,
    robust_index_set,
)
from .oracle import DEFAULT_BUDGET, BudgetExceededError, match_table

__all__ = [
    "CodegreeHypothesisError",
    "PipelineInvariantError",
    "PipelineConfig",
    "PartitionPipelineResult",
    "common_neighborhood_count",
    "reachable_pair",
    "closed_partition",
    "select_mu",
    "merge_transferrals",
    "run_pipeline",
]


class CodegreeHypothesisError(ValueError):
    """The input misses the minimum codegree the calling routine assumes."""


class PipelineInvariantError(RuntimeError):
    """A guarantee of the partition pipeline failed on an in-regime input."""


def _as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class PipelineConfig:
    """Thresholds and regime switches for the partition pipeline.

    gamma is the codegree slack: the pipeline assumes minimum codegree at
    least (1/k - gamma) n.  alpha scales the density demanded when leftover
    vertices are reassigned to a part.  beta_ladder holds the reachability
    thresholds per closure level; when empty, level i uses (1/20) (1/4)^i.
    mu0 seeds the robustness threshold selection.  t_cap caps the
    reachability order, since order t enumerates (tk-1)-sets.  Guarantees
    are enforced for n >= validity_floor and recorded as violations below.
    require_codegree allows deliberately out-of-regime inputs when False.
    """

    gamma: Fraction = Fraction(1, 20)
    alpha: Fraction = Fraction(1, 100)
    beta_ladder: Tuple[Fraction, ...] = ()
    mu0: Fraction = Fraction(1, 100)
    t_cap: int = 2
    validity_floor: int = 0
    require_codegree: bool = True
    budget: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "gamma", _as_fraction(self.gamma))
        object.__setattr__(self, "alpha", _as_fraction(self.alpha))
        object.__setattr__(self, "mu0", _as_fraction(self.mu0))
        object.__setattr__(
            self, "beta_ladder",
            tuple(_as_fraction(b) for b in self.beta_ladder))
        for name in ("gamma", "alpha", "mu0"):
            value = getattr(self, name)
            if not 0 < value < 1:
                raise ValueError(f"{name} must lie in (0, 1), got {value}")
        for b in self.beta_ladder:
            if not 0 < b < 1:
                raise ValueError(f"ladder entries must lie in (0, 1), got {b}")
        if any(a <= b for a, b in zip(self.beta_ladder, self.beta_ladder[1:])):
            raise ValueError("beta ladder must be strictly decreasing")
        if self.t_cap < 1:
            raise ValueError("t_cap must be at least 1")
        if self.validity_floor < 0:
            raise ValueError("validity_floor must be non-negative")

    def beta(self, i: int) -> Fraction:
        if i < len(self.beta_ladder):
            return self.beta_ladder[i]
        return Fraction(1, 20) * Fraction(1, 4) ** i

    def levels(self, k: int) -> int:
        """Number of closure levels: floor of 1 / (1/k - gamma)."""
        delta = Fraction(1, k) - self.gamma
        if delta <= 0:
            raise ValueError(f"gamma={self.gamma} leaves no codegree slack "
                             f"for k={k}; need gamma < 1/k")
        return math.floor(1 / delta)

    def oracle_budget(self) -> int:
        return DEFAULT_BUDGET if self.budget is None else self.budget


@dataclass(frozen=True)
class PartitionPipelineResult:
    """Everything the pipeline produced, including recorded violations."""

    p0: Partition
    p0_prime: Partition
    mu: Fraction
    robust_set: frozenset
    merge_trace: Tuple[Tuple[int, int], ...]
    order_cap: int
    violations: Tuple[str, ...]

    @property
    def lattice(self) -> EdgeLattice:
        return lattice_from(sorted(self.robust_set), d=self.p0_prime.d)


def check_codegree(H: Hypergraph, bound: Fraction, cfg: PipelineConfig) -> None:
    """Raise unless min codegree reaches bound * n (exactly compared)."""
    if not cfg.require_codegree:
        return
    codeg = H.min_codegree()
    if Fraction(codeg) < bound * H.n:
        raise CodegreeHypothesisError(
            f"minimum codegree {codeg} is below {bound} * n = "
            f"{bound * H.n} for n={H.n}, k={H.k}")


def common_neighborhood_count(H: Hypergraph, u: int, v: int) -> int:
    """Number of (k-1)-sets completing both u and v to an edge."""
    if u == v:
        raise ValueError("vertices must be distinct")
    edge_set = H.edge_set
    count = 0
    for idx in H.edges_by_vertex[u]:
        e = H.edges[idx]
        rest = tuple(x for x in e if x != u)
        if v not in rest and tuple(sorted(rest + (v,))) in edge_set:
            count += 1
    return count


def _require_table(H: Hypergraph, budget: int) -> np.ndarray:
    table = match_table(H, budget)
    if table is None:
        raise BudgetExceededError(2 ** H.n)
    return table


def _reach_counts(H: Hypergraph, order: int, budget: int) -> np.ndarray:
    """Pairwise counts of (order*k - 1)-sets extending both ends."""
    set_size = order * H.k - 1
    if order == 1:
        counts = np.zeros((H.n, H.n), dtype=np.int64)
        for u in range(H.n):
            for v in range(u + 1, H.n):
                c = common_neighborhood_count(H, u, v)
                counts[u, v] = counts[v, u] = c
        return counts
    table = _require_table(H, budget)
    return _kernels.pair_reach_counts(H.n, H.k, set_size, table)


def reachable_pair(H: Hypergraph, u: int, v: int, i: int, beta) -> bool:
    """At least beta * n^(ik-1) many (ik-1)-sets extend both u and v."""
    if u == v:
        raise ValueError("vertices must be distinct")
    if i < 1:
        raise ValueError("reachability order must be at least 1")
    set_size = i * H.k - 1
    if set_size > H.n - 2:
        raise ValueError(
            f"order {i} needs {set_size} + 2 vertices, only {H.n} available")
    beta = _as_fraction(beta)
    if i == 1:
        count = common_neighborhood_count(H, u, v)
    else:
        table = _require_table(H, DEFAULT_BUDGET)
        count = 0
        others = [w for w in range(H.n) if w not in (u, v)]
        for S in itertools.combinations(others, set_size):
            mask = 0
            for w in S:
                mask |= 1 << w
            size = set_size + 1
            if (int(table[mask | (1 << u)]) * H.k == size
                    and int(table[mask | (1 << v)]) * H.k == size):
                count += 1
    return count * beta.denominator >= beta.numerator * H.n ** set_size


def _reach_matrices(H: Hypergraph, cfg: PipelineConfig) -> list:
    """Cumulative boolean reachability per closure level."""
    n, k = H.n, H.k
    c = cfg.levels(k)
    budget = cfg.oracle_budget()
    counts_by_order = {}
    cumulative = []
    reach = np.zeros((n, n), dtype=bool)
    for level in range(c):
        order = min(2 ** level, cfg.t_cap)
        set_size = order * k - 1
        if set_size <= n - 2:
            if order not in counts_by_order:
                counts_by_order[order] = _reach_counts(H, order, budget)
            beta = cfg.beta(level)
            threshold = beta.numerator * n ** set_size
            level_reach = (counts_by_order[order] * beta.denominator
                           >= threshold)
            np.fill_diagonal(level_reach, False)
            reach = reach | level_reach
        cumulative.append(reach)
    return cumulative


def closed_partition(H: Hypergraph, cfg: PipelineConfig) -> Partition:
    """Initial partition into reachability-closed vertex classes.

    Levels 0..c-1 accumulate the reachability relation over the beta
    ladder.  If the top level connects every pair the partition is {V};
    otherwise the largest tuple of pairwise non-reachable vertices (at the
    level matching its size) seeds the parts, which are the reachable
    neighborhoods minus mutual overlaps, and every leftover vertex joins
    the first part holding enough of its level-0 neighbors.
    """
    check_codegree(H, Fraction(1, H.k) - cfg.gamma, cfg)
    n = H.n
    c = cfg.levels(H.k)
    cumulative = _reach_matrices(H, cfg)
    top = cumulative[c - 1]
    if top.sum() == n * (n - 1):
        return Partition([range(n)])
    witness = None
    d = None
    for cand in range(c, 1, -1):
        level = cumulative[c + 1 - cand]
        found = None
        for tup in itertools.combinations(range(n), cand):
            if all(not level[a, b] for a, b in itertools.combinations(tup, 2)):
                found = tup
                break
        if found is not None:
            witness, d = found, cand
            break
    # a non-reachable pair at the top level is a witness for d = 2
    assert witness is not None
    hood = cumulative[c - d]
    raw = []
    for i, vi in enumerate(witness):
        mine = {u for u in range(n) if hood[vi, u]} | {vi}
        for j, vj in enumerate(witness):
            if j != i:
                mine -= {u for u in range(n) if hood[vj, u]}
        raw.append(mine)
    assigned = set().union(*raw)
    leftovers = [v for v in range(n) if v not in assigned]
    snapshot = [frozenset(part) for part in raw]
    level0 = cumulative[0]
    eps = cfg.alpha / c
    for v in leftovers:
        counts = [sum(1 for u in part if level0[v, u]) for part in snapshot]
        eligible = [i for i, cnt in enumerate(counts)
                    if cnt * eps.denominator >= eps.numerator * n]
        if eligible:
            pick = eligible[0]
        else:
            pick = max(range(d), key=lambda i: (counts[i], -i))
        raw[pick].add(v)
    return Partition(raw)


def select_mu(H: Hypergraph, P0: Partition, mu0) -> Fraction:
    """Shrink mu by K = (k+1)^(d-1) until the robust class set is stable."""
    mu = _as_fraction(mu0)
    K = (H.k + 1) ** (P0.d - 1)
    if K == 1:
        return mu
    current = robust_index_set(H, P0, mu)
    while True:
        finer = robust_index_set(H, P0, mu / K)
        if finer == current:
            return mu
        mu, current = mu / K, finer


def merge_transferrals(H: Hypergraph, P0: Partition, mu) -> Tuple[
        Partition, Tuple[Tuple[int, int], ...]]:
    """Merge parts while the robust lattice contains a transferral.

    The pair (i, j) found first in lexicographic order is merged with the
    lower-indexed part absorbing the other; remaining parts keep their
    order.  At most d-1 merges can happen.
    """
    mu = _as_fraction(mu)
    P = P0
    trace = []
    while P.d > 1:
        L = lattice_from(sorted(robust_index_set(H, P, mu)), d=P.d)
        hit = find_transferral(L, P.d)
        if hit is None:
            break
        i, j = hit
        parts = list(P.parts)
        parts[i] = tuple(sorted(parts[i] + parts[j]))
        del parts[j]
        P = Partition(parts)
        trace.append((i, j))
    return P, tuple(trace)


def run_pipeline(H: Hypergraph, cfg: PipelineConfig) -> PartitionPipelineResult:
    """Partition, select mu, merge transferrals, and check the guarantees.

    Violations of the construction's guarantees (full pair, minimum part
    sizes) raise when n is at or above the validity floor and the codegree
    hypothesis was checked; otherwise they are recorded on the result.
    """
    p0 = closed_partition(H, cfg)
    mu = select_mu(H, p0, cfg.mu0)
    p0_prime, trace = merge_transferrals(H, p0, mu)
    robust = robust_index_set(H, p0_prime, mu)
    violations = []
    size_bound = (Fraction(1, H.k) - 2 * cfg.gamma) * H.n
    for label, P in (("initial", p0), ("merged", p0_prime)):
        for idx, part in enumerate(P.parts):
            if Fraction(len(part)) < size_bound:
                violations.append(
                    f"{label} part {idx} has {len(part)} vertices, "
                    f"below n/k - 2*gamma*n = {size_bound}")
    L = lattice_from(sorted(robust), d=p0_prime.d)
    if not is_full_pair(p0_prime, L, H.k):
        violations.append(
            f"merged partition with robust classes {sorted(robust)} "
            f"is not a full pair")
    refined = all(
        any(set(small) <= set(big) for big in p0_prime.parts)
        for small in p0.parts)
    if not refined:
        violations.append("initial partition does not refine the merged one")
    if violations and H.n >= cfg.validity_floor and cfg.require_codegree:
        raise PipelineInvariantError("; ".join(violations))
    return PartitionPipelineResult(
        p0=p0,
        p0_prime=p0_prime,
        mu=mu,
        robust_set=frozenset(robust),
        merge_trace=trace,
        order_cap=cfg.t_cap,
        violations=tuple(violations),
    )

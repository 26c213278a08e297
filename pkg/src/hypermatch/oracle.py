"""Exact perfect-matching and maximum-matching search.

Ground truth for everything else in the package.  Two regimes share one
recurrence (branch on the lowest-index uncovered vertex):

* table regime: when 2^n is affordable, a full subset-DP table of
  within-mask maximum matching sizes is built once per hypergraph and
  cached; every subsequent query is an O(1) lookup.
* search regime: otherwise a memoized depth-first search with an explicit
  node budget; exceeding the budget raises, and ``has_perfect_matching``
  converts that into an "unknown" result rather than guessing.
"""

from __future__ import annotations

from collections import OrderedDict
from typing import Iterable, Optional

import numpy as np

from . import _kernels
from .hypergraph import Hypergraph

__all__ = [
    "BudgetExceededError",
    "MatchResult",
    "has_perfect_matching",
    "max_matching_size",
    "pm_on_union",
    "matchable_mask",
    "match_table",
]

DEFAULT_BUDGET = 10 ** 8
_MEMO_CAP = 1 << 20


class BudgetExceededError(RuntimeError):
    """Search exceeded its node budget; the true answer is undetermined."""

    def __init__(self, nodes: int):
        super().__init__(f"matching search exceeded budget after {nodes} nodes")
        self.nodes = nodes


class MatchResult:
    """Outcome of a perfect-matching query.

    status is "yes", "no", or "unknown"; "unknown" only ever means the
    budget ran out, never an error.  witness is a tuple of disjoint edges
    covering V(H) when status is "yes".
    """

    __slots__ = ("status", "witness", "nodes")

    def __init__(self, status: str, witness=None, nodes: int = 0):
        self.status = status
        self.witness = witness
        self.nodes = nodes

    def __repr__(self) -> str:
        return f"MatchResult({self.status!r}, nodes={self.nodes})"


def _table_cost(H: Hypergraph) -> int:
    # per-mask work: one skip branch plus the edges bucketed at the mask's
    # lowest vertex, about m/n of them on average
    m = len(H.edges)
    return (1 << H.n) * (1 + m // max(H.n, 1))


def match_table(H: Hypergraph, budget: int = DEFAULT_BUDGET):
    """The cached int8 DP table, or None when 2^n exceeds the budget."""
    cached = H._match_table
    if isinstance(cached, np.ndarray):
        return cached
    if H.n > 62 or _table_cost(H) > budget:
        return None
    masks, starts = _kernels.group_edges_by_min(H.n, H.edge_masks)
    table = _kernels.max_matching_table(H.n, masks, starts)
    H._match_table = table
    return table


def _pm_memo(H: Hypergraph) -> dict:
    if not isinstance(H._match_table, dict):
        H._match_table = {}
    return H._match_table


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _pm_search(H: Hypergraph, mask: int, memo, counter, budget: int) -> bool:
    """Memoized all-or-nothing cover of mask by disjoint edges."""
    if mask == 0:
        return True
    hit = memo.get(mask)
    if hit is not None:
        memo.move_to_end(mask)
        return hit
    counter[0] += 1
    if counter[0] > budget:
        raise BudgetExceededError(counter[0])
    v = (mask & -mask).bit_length() - 1
    result = False
    for ei in H.edges_by_vertex[v]:
        em = H.edge_masks[ei]
        if em & mask == em and _pm_search(H, mask ^ em, memo, counter, budget):
            result = True
            break
    memo[mask] = result
    if len(memo) > _MEMO_CAP:
        memo.popitem(last=False)
    return result


def _mm_search(H: Hypergraph, mask: int, memo: dict, counter, budget: int) -> int:
    if mask == 0:
        return 0
    hit = memo.get(mask)
    if hit is not None:
        return hit
    counter[0] += 1
    if counter[0] > budget:
        raise BudgetExceededError(counter[0])
    v = (mask & -mask).bit_length() - 1
    best = _mm_search(H, mask & (mask - 1), memo, counter, budget)
    for ei in H.edges_by_vertex[v]:
        em = H.edge_masks[ei]
        if em & mask == em:
            cand = 1 + _mm_search(H, mask ^ em, memo, counter, budget)
            if cand > best:
                best = cand
    memo[mask] = best
    return best


def matchable_mask(H: Hypergraph, mask: int, budget: int = DEFAULT_BUDGET) -> bool:
    """Does H restricted to the vertices in mask have a perfect matching?"""
    if _popcount(mask) % H.k != 0:
        return False
    table = match_table(H, budget)
    if table is not None:
        return int(table[mask]) * H.k == _popcount(mask)
    memo = _pm_memo(H)
    wrapped = memo.setdefault("pm", OrderedDict())
    return _pm_search(H, mask, wrapped, [0], budget)


def _extract_witness(H: Hypergraph, mask: int, budget: int):
    """Walk the matchable states picking one covering edge at a time."""
    edges = []
    while mask:
        v = (mask & -mask).bit_length() - 1
        for ei in H.edges_by_vertex[v]:
            em = H.edge_masks[ei]
            if em & mask == em and matchable_mask(H, mask ^ em, budget):
                edges.append(H.edges[ei])
                mask ^= em
                break
        else:
            raise AssertionError("witness walk stuck on a matchable mask")
    return tuple(edges)


def has_perfect_matching(H: Hypergraph, budget: int = DEFAULT_BUDGET) -> MatchResult:
    """Exact perfect-matching decision with explicit budget semantics."""
    if H.n % H.k != 0:
        return MatchResult("no", nodes=0)
    if H.n == 0:
        return MatchResult("yes", witness=(), nodes=0)
    full = (1 << H.n) - 1
    table = match_table(H, budget)
    if table is not None:
        if int(table[full]) * H.k == H.n:
            return MatchResult("yes", witness=_extract_witness(H, full, budget),
                               nodes=1 << H.n)
        return MatchResult("no", nodes=1 << H.n)
    memo = _pm_memo(H).setdefault("pm", OrderedDict())
    counter = [0]
    try:
        ok = _pm_search(H, full, memo, counter, budget)
    except BudgetExceededError as exc:
        return MatchResult("unknown", nodes=exc.nodes)
    if ok:
        return MatchResult("yes", witness=_extract_witness(H, full, budget),
                           nodes=counter[0])
    return MatchResult("no", nodes=counter[0])


def max_matching_size(H: Hypergraph, budget: int = DEFAULT_BUDGET) -> int:
    """Size of a maximum matching; raises BudgetExceededError when unsure."""
    if H.n == 0:
        return 0
    full = (1 << H.n) - 1
    table = match_table(H, budget)
    if table is not None:
        return int(table[full])
    memo = _pm_memo(H).setdefault("mm", {})
    return _mm_search(H, full, memo, [0], budget)


def pm_on_union(H: Hypergraph, S: Iterable[int], v: int,
                budget: int = DEFAULT_BUDGET) -> bool:
    """Perfect matchability of H restricted to S plus one extra vertex."""
    s = frozenset(S)
    if v in s:
        raise ValueError(f"vertex {v} already in S")
    if (len(s) + 1) % H.k != 0:
        raise ValueError(f"|S|+1 = {len(s) + 1} not divisible by k = {H.k}")
    mask = 1 << v
    for u in s:
        mask |= 1 << u
    return matchable_mask(H, mask, budget)

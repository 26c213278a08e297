"""Hot inner loops shared by the oracle, reachability, and partition search.

Each kernel exists twice: a numba ``@njit`` version and a numpy/pure-Python
fallback.  The public wrappers pick the backend per call, so flipping the
``HYPERMATCH_NO_NUMBA`` environment variable (or running without numba
installed) switches paths without any module reloading.  The benchmark
suite times both backends through the explicit ``*_jit`` / ``*_py``
handles.

Kernels
-------
max_matching_table
    Subset DP over vertex bitmasks: entry ``mask`` holds the maximum number
    of disjoint edges inside ``mask``.  A mask is perfectly matchable iff
    ``table[mask] * k == popcount(mask)``.
compliant_assignments
    Backtracking enumeration of part assignments (vertex -> part) under
    the constraint that every fully assigned edge's part-count profile
    lies in an allowed set.
pair_reach_counts
    For every vertex pair (u, v), the number of fixed-size sets S avoiding
    both with S+u and S+v perfectly matchable, read off the DP table.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    _NUMBA_AVAILABLE = True
except Exception:  # pragma: no cover - exercised only without numba
    _NUMBA_AVAILABLE = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(func):
            return func

        return wrap


_ENV_FLAG = "HYPERMATCH_NO_NUMBA"


def numba_available() -> bool:
    return _NUMBA_AVAILABLE


def numba_enabled() -> bool:
    """True when the jit backend both exists and is not disabled by env."""
    if not _NUMBA_AVAILABLE:
        return False
    return os.environ.get(_ENV_FLAG, "").strip().lower() not in ("1", "true", "yes")


# -- max matching table --------------------------------------------------


def group_edges_by_min(n, edge_masks):
    """CSR-style grouping of edge bitmasks by their lowest vertex.

    Any edge inside a mask whose lowest set bit is v must contain a vertex
    <= v; grouping by minimum vertex lets the DP touch only candidate
    edges.  Returns (masks: int64[m], starts: int64[n+1]).
    """
    buckets = [[] for _ in range(n)]
    for em in edge_masks:
        v = (em & -em).bit_length() - 1
        buckets[v].append(em)
    flat = []
    starts = np.zeros(n + 1, dtype=np.int64)
    for v in range(n):
        flat.extend(buckets[v])
        starts[v + 1] = len(flat)
    return np.array(flat, dtype=np.int64), starts


@njit(cache=True)
def _max_matching_table_jit(n, edge_masks, starts):
    size = 1 << n
    table = np.zeros(size, dtype=np.int8)
    for mask in range(1, size):
        low = mask & (-mask)
        v = 0
        t = low >> 1
        while t:
            t >>= 1
            v += 1
        best = table[mask ^ low]
        for idx in range(starts[v], starts[v + 1]):
            em = edge_masks[idx]
            if em & mask == em:
                cand = table[mask ^ em] + 1
                if cand > best:
                    best = cand
        table[mask] = best
    return table


def _max_matching_table_py(n, edge_masks, starts):
    size = 1 << n
    table = np.zeros(size, dtype=np.int8)
    for mask in range(1, size):
        v = (mask & -mask).bit_length() - 1
        best = int(table[mask & (mask - 1)])
        lo, hi = int(starts[v]), int(starts[v + 1])
        if lo < hi:
            ems = edge_masks[lo:hi]
            inside = ems[(ems & mask) == ems]
            if inside.size:
                cand = int(table[mask ^ inside].max()) + 1
                if cand > best:
                    best = cand
        table[mask] = best
    return table


def max_matching_table(n, edge_masks, starts):
    """int8[2^n] table of within-mask maximum matching sizes."""
    if numba_enabled():
        return _max_matching_table_jit(n, edge_masks, starts)
    return _max_matching_table_py(n, edge_masks, starts)


# -- compliant part assignments ------------------------------------------


def group_edges_by_max(n, k, edges):
    """Flat edge array grouped by highest vertex, for prefix-complete checks.

    When vertices are assigned in increasing order, an edge becomes fully
    assigned exactly when its maximum vertex is reached.  Returns
    (flat: int64[m*k], starts: int64[n+1]).
    """
    buckets = [[] for _ in range(n)]
    for e in edges:
        buckets[e[-1]].append(e)
    flat = []
    starts = np.zeros(n + 1, dtype=np.int64)
    for v in range(n):
        for e in buckets[v]:
            flat.extend(e)
        starts[v + 1] = starts[v] + len(buckets[v])
    return np.array(flat, dtype=np.int64), starts


@njit(cache=True)
def _compliant_assignments_jit(n, d, k, edges_flat, starts, allowed,
                               require_all_parts, out):
    max_out = out.shape[0]
    assign = np.zeros(n, dtype=np.int8)
    trial = np.zeros(n, dtype=np.int8)
    occupancy = np.zeros(d, dtype=np.int64)
    powers = np.empty(d, dtype=np.int64)
    p = 1
    for j in range(d):
        powers[j] = p
        p *= k + 1
    total = 0
    v = 0
    while v >= 0:
        if trial[v] == d:
            trial[v] = 0
            v -= 1
            if v >= 0:
                occupancy[assign[v]] -= 1
                trial[v] += 1
            continue
        assign[v] = trial[v]
        ok = True
        for ei in range(starts[v], starts[v + 1]):
            base = ei * k
            code = 0
            for j in range(k):
                code += powers[assign[edges_flat[base + j]]]
            if not allowed[code]:
                ok = False
                break
        if not ok:
            trial[v] += 1
            continue
        occupancy[assign[v]] += 1
        if v == n - 1:
            emit = True
            if require_all_parts:
                for j in range(d):
                    if occupancy[j] == 0:
                        emit = False
                        break
            if emit:
                if total < max_out:
                    for u in range(n):
                        out[total, u] = assign[u]
                total += 1
            occupancy[assign[v]] -= 1
            trial[v] += 1
            continue
        v += 1
    return total


def _compliant_assignments_py(n, d, k, edges_flat, starts, allowed,
                              require_all_parts, out):
    max_out = out.shape[0]
    assign = [0] * n
    trial = [0] * n
    occupancy = [0] * d
    powers = [(k + 1) ** j for j in range(d)]
    edges_flat = edges_flat.tolist()
    starts = starts.tolist()
    allowed = allowed.tolist()
    total = 0
    v = 0
    while v >= 0:
        if trial[v] == d:
            trial[v] = 0
            v -= 1
            if v >= 0:
                occupancy[assign[v]] -= 1
                trial[v] += 1
            continue
        assign[v] = trial[v]
        ok = True
        for ei in range(starts[v], starts[v + 1]):
            base = ei * k
            code = 0
            for j in range(base, base + k):
                code += powers[assign[edges_flat[j]]]
            if not allowed[code]:
                ok = False
                break
        if not ok:
            trial[v] += 1
            continue
        occupancy[assign[v]] += 1
        if v == n - 1:
            if not require_all_parts or 0 not in occupancy:
                if total < max_out:
                    out[total] = assign
                total += 1
            occupancy[assign[v]] -= 1
            trial[v] += 1
            continue
        v += 1
    return total


def compliant_assignments(n, d, k, edges_flat, starts, allowed,
                          require_all_parts, max_out):
    """All part assignments keeping every edge's profile in the allowed set.

    Returns (count, array int8[min(count, max_out), n]).  ``count`` is the
    true number of compliant assignments even when it exceeds ``max_out``;
    the caller decides whether truncation matters.
    """
    out = np.zeros((max_out, n), dtype=np.int8)
    if numba_enabled():
        total = _compliant_assignments_jit(n, d, k, edges_flat, starts,
                                           allowed, require_all_parts, out)
    else:
        total = _compliant_assignments_py(n, d, k, edges_flat, starts,
                                          allowed, require_all_parts, out)
    return total, out[: min(total, max_out)]


# -- pairwise reachability counts ------------------------------------------


@njit(cache=True)
def _pair_reach_counts_jit(n, k, set_size, table):
    counts = np.zeros((n, n), dtype=np.int64)
    good = np.empty(n, dtype=np.int64)
    size = 1 << n
    target = set_size + 1
    for mask in range(size):
        pc = 0
        t = mask
        while t:
            t &= t - 1
            pc += 1
        if pc != set_size:
            continue
        cnt = 0
        for u in range(n):
            if mask & (1 << u):
                continue
            if table[mask | (1 << u)] * k == target:
                good[cnt] = u
                cnt += 1
        for i in range(cnt):
            gi = good[i]
            for j in range(cnt):
                if i != j:
                    counts[gi, good[j]] += 1
    return counts


def _pair_reach_counts_py(n, k, set_size, table):
    size = 1 << n
    masks = np.arange(size, dtype=np.int64)
    pc = np.zeros(size, dtype=np.int8)
    for b in range(n):
        pc += ((masks >> b) & 1).astype(np.int8)
    sets = masks[pc == set_size]
    target = set_size + 1
    # reach[u, s]: S+u perfectly matchable; u in S gives popcount != target,
    # so those entries are false without a separate membership test
    reach = np.empty((n, sets.size), dtype=bool)
    for u in range(n):
        reach[u] = table[sets | (1 << u)] * k == target
    counts = reach.astype(np.int64) @ reach.T.astype(np.int64)
    np.fill_diagonal(counts, 0)
    return counts


def pair_reach_counts(n, k, set_size, table):
    """int64[n, n] matrix of common perfectly-matchable extension counts."""
    if numba_enabled():
        return _pair_reach_counts_jit(n, k, set_size, table)
    return _pair_reach_counts_py(n, k, set_size, table)

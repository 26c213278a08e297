"""Independent reference implementations for freezing expected test values.

Everything here deliberately uses different machinery from the package
(frozensets and plain recursion instead of bitmask DP tables, no
memoization, no numpy), so agreement between the two is evidence rather
than tautology.  Only suitable for small instances.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


def naive_has_pm(n: int, k: int, edges) -> bool:
    if n % k != 0:
        return False
    es = [frozenset(e) for e in edges]

    def go(uncovered: frozenset) -> bool:
        if not uncovered:
            return True
        v = min(uncovered)
        for e in es:
            if v in e and e <= uncovered and go(uncovered - e):
                return True
        return False

    return go(frozenset(range(n)))


def naive_max_matching(n: int, k: int, edges) -> int:
    es = [frozenset(e) for e in edges]

    def go(uncovered: frozenset, start: int) -> int:
        best = 0
        for i in range(start, len(es)):
            if es[i] <= uncovered:
                cand = 1 + go(uncovered - es[i], i + 1)
                if cand > best:
                    best = cand
        return best

    return go(frozenset(range(n)), 0)


def naive_degree(edges, S) -> int:
    s = frozenset(S)
    return sum(1 for e in edges if s <= frozenset(e))


def naive_min_codegree(n: int, k: int, edges) -> int:
    return min(naive_degree(edges, s)
               for s in itertools.combinations(range(n), k - 1))


def naive_common_neighborhood(n: int, k: int, edges, u: int, v: int) -> int:
    es = {frozenset(e) for e in edges}
    count = 0
    for s in itertools.combinations(sorted(set(range(n)) - {u, v}), k - 1):
        if frozenset(s) | {u} in es and frozenset(s) | {v} in es:
            count += 1
    return count


def naive_reach_count(n: int, k: int, edges, u: int, v: int, i: int) -> int:
    """Number of (ik-1)-sets S avoiding u,v with S+u and S+v matchable."""
    count = 0
    pool = sorted(set(range(n)) - {u, v})
    for s in itertools.combinations(pool, i * k - 1):
        su = set(s) | {u}
        sv = set(s) | {v}
        if (naive_has_pm_induced(k, edges, su)
                and naive_has_pm_induced(k, edges, sv)):
            count += 1
    return count


def naive_has_pm_induced(k: int, edges, W) -> bool:
    w = frozenset(W)
    sub = [e for e in edges if frozenset(e) <= w]
    relabel = {x: i for i, x in enumerate(sorted(w))}
    return naive_has_pm(len(w), k, [[relabel[x] for x in e] for e in sub])


def naive_lattice_member(generators, target) -> bool:
    """Exact membership via sympy's Hermite normal form.

    target lies in the integer span of the generators iff appending it
    does not change the canonical column HNF of the generator matrix.
    """
    from sympy import Matrix
    from sympy.matrices.normalforms import hermite_normal_form

    gens = [list(g) for g in generators if any(g)]
    if not gens:
        return not any(target)
    base = hermite_normal_form(Matrix(gens).T)
    extended = hermite_normal_form(Matrix(gens + [list(target)]).T)
    return base == extended


def naive_coset_order(generators, d: int, k: int, box: int = 6) -> int:
    """Cosets of the span inside the sum-divisible-by-k lattice, by brute force.

    Greedily collects coset representatives from the box [0, box)^d and
    insists the count stabilizes when the box grows, so the answer does not
    depend on the cutoff.  Only meaningful for full-rank spans.
    """
    def count_in_box(b):
        reps = []
        for v in itertools.product(range(b), repeat=d):
            if sum(v) % k != 0:
                continue
            diffs = ([x - y for x, y in zip(v, r)] for r in reps)
            if not any(naive_lattice_member(generators, diff) for diff in diffs):
                reps.append(v)
        return len(reps)

    first, second = count_in_box(box), count_in_box(box + k)
    if first != second:
        raise AssertionError(f"coset count did not stabilize: {first} vs {second}")
    return first


def exact_fraction(num: int, den: int) -> Fraction:
    return Fraction(num, den)

def naive_soluble(n: int, k: int, edges, parts, generators) -> bool:
    """Matching of size <= len(parts)-1 leaving an in-lattice index vector."""
    plist = [frozenset(p) for p in parts]
    es = [frozenset(e) for e in edges]

    def ivec(vertices) -> tuple:
        return tuple(len(vertices & p) for p in plist)

    def go(leftover: frozenset, start: int, room: int) -> bool:
        if naive_lattice_member(generators, ivec(leftover)):
            return True
        if room == 0:
            return False
        for i in range(start, len(es)):
            if es[i] <= leftover and go(leftover - es[i], i + 1, room - 1):
                return True
        return False

    return go(frozenset(range(n)), 0, len(plist) - 1)


def naive_compliant_partitions(n: int, k: int, edges, d: int, generators):
    """All ordered d-part partitions keeping every edge class in the span."""
    out = set()
    member_cache = {}

    def member(vec: tuple) -> bool:
        if vec not in member_cache:
            member_cache[vec] = naive_lattice_member(generators, vec)
        return member_cache[vec]

    for assign in itertools.product(range(d), repeat=n):
        if len(set(assign)) < d:
            continue
        ok = True
        for e in edges:
            vec = [0] * d
            for v in e:
                vec[assign[v]] += 1
            if not member(tuple(vec)):
                ok = False
                break
        if ok:
            parts = tuple(tuple(v for v in range(n) if assign[v] == j)
                          for j in range(d))
            out.add(parts)
    return out


def naive_parity_bipartition(n: int, k: int, edges):
    """First X (by size, then lex) with n/k - |X| odd and all edges odd in X."""
    quota = n // k
    for r in range(n + 1):
        if (quota - r) % 2 == 0:
            continue
        for X in itertools.combinations(range(n), r):
            xs = frozenset(X)
            if all(len(xs & frozenset(e)) % 2 == 1 for e in edges):
                return X
    return None

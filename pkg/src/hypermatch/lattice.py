"""Exact integer arithmetic on index vectors and edge-lattices.

Everything here is plain Python integers: lattices are subgroups of Z^d
represented by a canonical triangular basis (positive pivots, entries
above each pivot reduced modulo it), so structural equality of bases is
equality of lattices and membership is back-substitution.  No floating
point enters any code path.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Dict, Iterable, Optional, Sequence, Tuple

from .hypergraph import Hypergraph

__all__ = [
    "Partition",
    "EdgeLattice",
    "index_vector",
    "edge_index_set",
    "index_multiplicities",
    "robust_index_set",
    "lattice_from",
    "lattice_contains",
    "is_transferral_free",
    "find_transferral",
    "all_k_vectors",
    "is_full_index_set",
    "is_full_pair",
    "coset_group_order",
    "residue",
    "represent_with_coeffs",
    "max_lattice",
    "odd_lattice",
]

Vector = Tuple[int, ...]


class Partition:
    """An ordered partition of {0, ..., n-1} into non-empty parts."""

    __slots__ = ("parts", "n", "_where")

    def __init__(self, parts: Iterable[Iterable[int]]):
        normalized = tuple(tuple(sorted(p)) for p in parts)
        if not normalized:
            raise ValueError("a partition needs at least one part")
        where: Dict[int, int] = {}
        for i, part in enumerate(normalized):
            if not part:
                raise ValueError(f"part {i} is empty")
            for v in part:
                if v in where:
                    raise ValueError(f"vertex {v} appears in two parts")
                where[v] = i
        n = len(where)
        if set(where) != set(range(n)):
            raise ValueError("parts must cover exactly 0..n-1")
        self.parts = normalized
        self.n = n
        self._where = where

    @property
    def d(self) -> int:
        return len(self.parts)

    def part_of(self, v: int) -> int:
        return self._where[v]

    def assignment(self) -> Tuple[int, ...]:
        return tuple(self._where[v] for v in range(self.n))

    @classmethod
    def from_assignment(cls, assign: Sequence[int], d: Optional[int] = None) -> "Partition":
        if d is None:
            d = max(assign) + 1 if len(assign) else 0
        parts = [[] for _ in range(d)]
        for v, p in enumerate(assign):
            parts[p].append(v)
        return cls(parts)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return self.parts == other.parts

    def __hash__(self) -> int:
        return hash(self.parts)

    def __repr__(self) -> str:
        return f"Partition({list(map(list, self.parts))})"


def index_vector(P: Partition, S: Iterable[int]) -> Vector:
    """Coordinate j counts the vertices of S lying in part j."""
    counts = [0] * P.d
    for v in S:
        counts[P.part_of(v)] += 1
    return tuple(counts)


def index_multiplicities(H: Hypergraph, P: Partition) -> Dict[Vector, int]:
    if P.n != H.n:
        raise ValueError("partition does not cover V(H)")
    counts: Dict[Vector, int] = {}
    for e in H.edges:
        iv = index_vector(P, e)
        counts[iv] = counts.get(iv, 0) + 1
    return counts


def edge_index_set(H: Hypergraph, P: Partition) -> frozenset:
    return frozenset(index_multiplicities(H, P))


def robust_index_set(H: Hypergraph, P: Partition, mu: Fraction) -> frozenset:
    """Index vectors realized by at least mu * n^k edges, exactly."""
    mu = Fraction(mu)
    if mu < 0:
        raise ValueError("mu must be non-negative")
    threshold_num = mu.numerator * H.n ** H.k
    den = mu.denominator
    return frozenset(v for v, c in index_multiplicities(H, P).items()
                     if c * den >= threshold_num)


# -- canonical lattice bases -------------------------------------------------


def _triangular_basis(vectors: Iterable[Vector], d: int) -> Tuple[Vector, ...]:
    """Canonical row-triangular basis of the integer span of the vectors.

    Pivots are positive and leftmost per row; entries above each pivot are
    reduced into [0, pivot).  The form is unique for a given subgroup, so
    basis equality is lattice equality.
    """
    pool = [list(v) for v in vectors if any(v)]
    basis: list[list[int]] = []
    for col in range(d):
        carry: list[list[int]] = []
        pivot: Optional[list[int]] = None
        for row in pool:
            if row[col] == 0:
                carry.append(row)
                continue
            if pivot is None:
                pivot = row
                continue
            a, b = pivot, row
            while b[col] != 0:
                q = a[col] // b[col]
                a = [x - q * y for x, y in zip(a, b)]
                a, b = b, a
            pivot = a
            if any(b):
                carry.append(b)
        if pivot is not None:
            if pivot[col] < 0:
                pivot = [-x for x in pivot]
            basis.append(pivot)
        pool = carry
    # Reduce entries above each pivot, taking pivot columns left to right:
    # later rows are zero in all earlier pivot columns, so nothing already
    # reduced is disturbed and the form is canonical.
    for i in range(1, len(basis)):
        c = next(j for j, x in enumerate(basis[i]) if x != 0)
        p = basis[i][c]
        for r in range(i):
            q = basis[r][c] // p
            if q:
                basis[r] = [x - q * y for x, y in zip(basis[r], basis[i])]
    return tuple(tuple(row) for row in basis)


class EdgeLattice:
    """Subgroup of Z^d generated by integer vectors, in canonical form."""

    __slots__ = ("d", "generators", "basis", "_pivots")

    def __init__(self, generators: Iterable[Vector], d: Optional[int] = None):
        gens = tuple(tuple(int(x) for x in g) for g in generators)
        if d is None:
            if not gens:
                raise ValueError("dimension required for an empty generating set")
            d = len(gens[0])
        for g in gens:
            if len(g) != d:
                raise ValueError(f"generator {g} does not have dimension {d}")
        self.d = d
        self.generators = gens
        self.basis = _triangular_basis(gens, d)
        self._pivots = tuple(
            (next(j for j, x in enumerate(row) if x != 0), row)
            for row in self.basis)

    def contains(self, v: Vector) -> bool:
        if len(v) != self.d:
            raise ValueError(f"vector {v} does not have dimension {self.d}")
        w = list(v)
        for col, row in self._pivots:
            q, r = divmod(w[col], row[col])
            if r != 0:
                return False
            w = [x - q * y for x, y in zip(w, row)]
        return not any(w)

    def residue(self, v: Vector) -> Vector:
        """Canonical representative of the coset v + L."""
        if len(v) != self.d:
            raise ValueError(f"vector {v} does not have dimension {self.d}")
        w = list(v)
        for col, row in self._pivots:
            q = w[col] // row[col]
            if q:
                w = [x - q * y for x, y in zip(w, row)]
        return tuple(w)

    def extended(self, v: Vector) -> "EdgeLattice":
        """The lattice generated by this one plus one more vector."""
        return EdgeLattice(self.basis + (tuple(v),), self.d)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def __eq__(self, other) -> bool:
        if not isinstance(other, EdgeLattice):
            return NotImplemented
        return self.d == other.d and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.d, self.basis))

    def __repr__(self) -> str:
        return f"EdgeLattice(d={self.d}, basis={list(self.basis)})"


def lattice_from(generators: Iterable[Vector], d: Optional[int] = None) -> EdgeLattice:
    return EdgeLattice(generators, d)


def lattice_contains(L: EdgeLattice, v: Vector) -> bool:
    return L.contains(v)


# -- structural predicates ---------------------------------------------------


def find_transferral(L: EdgeLattice, d: int) -> Optional[Tuple[int, int]]:
    """First (i, j) with u_i - u_j in L, scanning in lexicographic order."""
    if d != L.d:
        raise ValueError("dimension mismatch")
    for i in range(d):
        for j in range(d):
            if i == j:
                continue
            diff = [0] * d
            diff[i] = 1
            diff[j] = -1
            if L.contains(tuple(diff)):
                return (i, j)
    return None


def is_transferral_free(L: EdgeLattice, d: int) -> bool:
    return find_transferral(L, d) is None


def all_k_vectors(d: int, k: int) -> Tuple[Vector, ...]:
    """All non-negative integer d-vectors with coordinate sum k."""
    out = []
    for bars in itertools.combinations(range(k + d - 1), d - 1):
        prev = -1
        counts = []
        for b in bars:
            counts.append(b - prev - 1)
            prev = b
        counts.append(k + d - 1 - prev - 1)
        out.append(tuple(counts))
    return tuple(out)


def is_full_index_set(I: Iterable[Vector], d: int, k: int) -> bool:
    """Every non-negative (k-1)-vector extends into I by some unit vector."""
    got = set(tuple(v) for v in I)
    for v in all_k_vectors(d, k - 1):
        if not any(tuple(x + (1 if j == i else 0) for j, x in enumerate(v)) in got
                   for i in range(d)):
            return False
    return True


def lattice_k_vector_content(L: EdgeLattice, k: int) -> frozenset:
    return frozenset(v for v in all_k_vectors(L.d, k) if L.contains(v))


def is_full_pair(P: Partition, L: EdgeLattice, k: int) -> bool:
    """Transferral-free lattice with full k-vector content, d = |P| <= k."""
    if L.d != P.d or P.d > k:
        return False
    if not is_transferral_free(L, L.d):
        return False
    return is_full_index_set(lattice_k_vector_content(L, k), L.d, k)


def max_lattice(d: int, k: int) -> EdgeLattice:
    """All integer d-vectors whose coordinate sum is divisible by k."""
    gens = [tuple(k if j == 0 else 0 for j in range(d))]
    for i in range(1, d):
        gens.append(tuple(1 if j == 0 else (-1 if j == i else 0)
                          for j in range(d)))
    return EdgeLattice(gens, d)


def odd_lattice(k: int) -> EdgeLattice:
    """Lattice of the parity obstruction: spanned by the odd 2-part k-vectors."""
    return EdgeLattice([(a, k - a) for a in range(1, k + 1, 2)], 2)


def coset_group_order(L: EdgeLattice, d: int, k: int) -> Optional[int]:
    """Order of (all-coordinate-sums-divisible-by-k) / L, or None if infinite."""
    if d != L.d:
        raise ValueError("dimension mismatch")
    for row in L.basis:
        if sum(row) % k != 0:
            raise ValueError(f"lattice is not inside the divisible-sum lattice: "
                             f"basis row {row} has sum {sum(row)}")
    if L.rank < d:
        return None
    det = 1
    for col, row in L._pivots:
        det *= row[col]
    # the ambient divisible-sum lattice has index k in Z^d
    return det // k


def residue(L: EdgeLattice, v: Vector) -> Vector:
    return L.residue(v)


def represent_with_coeffs(I: Sequence[Vector], target: Vector,
                          bound: int) -> Optional[Tuple[int, ...]]:
    """Integer coefficients a with |a_i| <= bound and sum a_i * I[i] = target.

    Returns the coefficients aligned with the order of I, or None when no
    bounded combination exists.  Meet-in-the-middle over the two halves of
    I; the first match in the deterministic enumeration order wins.
    """
    gens = [tuple(v) for v in I]
    if any(len(g) != len(target) for g in gens):
        raise ValueError("dimension mismatch")
    if bound < 0:
        raise ValueError("bound must be non-negative")
    half = len(gens) // 2
    left, right = gens[:half], gens[half:]
    rng = range(-bound, bound + 1)

    left_sums: Dict[Vector, Tuple[int, ...]] = {}
    for coeffs in itertools.product(rng, repeat=len(left)):
        total = tuple(sum(c * v[j] for c, v in zip(coeffs, left))
                      for j in range(len(target)))
        left_sums.setdefault(total, coeffs)
    for coeffs in itertools.product(rng, repeat=len(right)):
        partial = tuple(sum(c * v[j] for c, v in zip(coeffs, right))
                        for j in range(len(target)))
        need = tuple(t - p for t, p in zip(target, partial))
        hit = left_sums.get(need)
        if hit is not None:
            return hit + coeffs
    return None

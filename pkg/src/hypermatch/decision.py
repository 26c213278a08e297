"""Decision procedures for perfect matchings in dense uniform hypergraphs.

Two routes reach the same verdict.  The structural route (``decide_slow``)
distills the hypergraph into a canonical full pair with the reachability
pipeline, then decides by solubility plus a parity-family check.  The
certificate route (``decide_fast``) searches for a compact witness of
non-matchability instead: an insoluble full pair together with a fixed-size
vertex set covering every edge whose index vector leaves the lattice.  A
found certificate refutes a perfect matching at every n; the completeness
of either route is asymptotic, so verdicts on small instances carry a
validity note rather than a guarantee.

Solubility, parity-family membership, constraint-compliant partition
listing, and full-lattice enumeration are exposed as standalone predicates
because tests and the CLI exercise them directly.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import (Dict, Iterator, List, Mapping, Optional, Sequence, Set,
                    Tuple)

import numpy as np

from ._kernels import compliant_assignments, group_edges_by_max
from .hypergraph import Hypergraph
from .lattice import (EdgeLattice, Partition, all_k_vectors,
                      coset_group_order, find_transferral, index_vector,
                      is_full_index_set, is_full_pair, is_transferral_free,
                      lattice_from, lattice_k_vector_content, odd_lattice)
from .oracle import DEFAULT_BUDGET, has_perfect_matching
from .reachability import PipelineConfig, check_codegree, run_pipeline

__all__ = [
    "Certificate",
    "Decision",
    "CertificateBudgetError",
    "ListingStallError",
    "FullLatticeFamily",
    "default_cover_size",
    "is_soluble",
    "is_soluble_unbounded",
    "in_Hnk",
    "list_partitions",
    "enumerate_full_lattices",
    "has_certificate",
    "verify_certificate",
    "decide_brute",
    "decide_slow",
    "decide_fast",
]

Vector = Tuple[int, ...]


class ListingStallError(RuntimeError):
    """Partition listing gave up before covering its assignment space."""

    def __init__(self, partial: Tuple[Partition, ...], space: int, cap: int):
        super().__init__(f"assignment space {space} exceeds cap {cap}")
        self.partial = partial
        self.space = space
        self.cap = cap


class CertificateBudgetError(RuntimeError):
    """Certificate search ran out of its subset budget.

    ``next_index`` is the position in the lexicographic subset order where
    a resumed search should continue.
    """

    def __init__(self, subsets_done: int, budget: int, next_index: int):
        super().__init__(f"examined {subsets_done} subsets, budget {budget}")
        self.subsets_done = subsets_done
        self.budget = budget
        self.next_index = next_index


def default_cover_size(k: int) -> int:
    """Cover size 2k(k-2) sufficient for certificates at uniformity k."""
    return 2 * k * (k - 2)


def _jsonify(obj):
    """Recursive conversion to JSON-ready data, keeping rationals exact."""
    if isinstance(obj, Fraction):
        return [obj.numerator, obj.denominator]
    if isinstance(obj, Certificate):
        return obj.to_json()
    if isinstance(obj, Partition):
        return [list(p) for p in obj.parts]
    if isinstance(obj, EdgeLattice):
        return {"d": obj.d, "basis": [list(row) for row in obj.basis]}
    if isinstance(obj, dict):
        return {str(key): _jsonify(val) for key, val in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        seq = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [_jsonify(x) for x in seq]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    return obj


@dataclass(frozen=True)
class Certificate:
    """An insoluble full pair plus a vertex set covering off-lattice edges.

    Soundness does not depend on instance size: insolubility bounds what
    any matching restricted to compliant edges can do, and the cover pins
    the non-compliant edges to finitely many vertices.
    """

    partition: Partition
    lattice: EdgeLattice
    cover_set: Tuple[int, ...]
    insolubility_proof: Mapping[str, object]

    @property
    def pair(self) -> Tuple[Partition, EdgeLattice]:
        return (self.partition, self.lattice)

    def to_json(self) -> dict:
        return {
            "parts": [list(p) for p in self.partition.parts],
            "lattice_generators": [list(g) for g in self.lattice.generators],
            "lattice_basis": [list(row) for row in self.lattice.basis],
            "cover_set": list(self.cover_set),
            "insolubility_proof": _jsonify(dict(self.insolubility_proof)),
        }


@dataclass(frozen=True)
class Decision:
    """Outcome of one decision procedure, with machine-checkable evidence."""

    verdict: str
    evidence: Mapping[str, object]
    method: str
    validity_note: Optional[str] = None
    budgets: Mapping[str, int] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "method": self.method,
            "evidence": _jsonify(dict(self.evidence)),
            "budgets": _jsonify(dict(self.budgets)),
            "validity_note": self.validity_note,
        }


# -- solubility --------------------------------------------------------------


def _vec_add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def _vec_sub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def _edges_by_class(H: Hypergraph, P: Partition) -> Dict[Vector, List[Tuple[int, ...]]]:
    by_class: Dict[Vector, List[Tuple[int, ...]]] = {}
    for e in H.edges:
        by_class.setdefault(index_vector(P, e), []).append(e)
    return by_class


def _realize_multiset(by_class: Dict[Vector, List[Tuple[int, ...]]],
                      multiset: Tuple[Vector, ...]) -> Optional[Tuple[Tuple[int, ...], ...]]:
    """First disjoint edge family matching the class multiset, or None.

    Within a run of equal classes the edge indices are forced to increase,
    so permutations of one family are tried exactly once.
    """
    chosen: List[Tuple[int, ...]] = []
    used: Set[int] = set()

    def extend(i: int, floor: int) -> bool:
        if i == len(multiset):
            return True
        pool = by_class[multiset[i]]
        start = floor if i > 0 and multiset[i - 1] == multiset[i] else 0
        for j in range(start, len(pool)):
            e = pool[j]
            if used.isdisjoint(e):
                used.update(e)
                chosen.append(e)
                if extend(i + 1, j + 1):
                    return True
                chosen.pop()
                used.difference_update(e)
        return False

    if extend(0, 0):
        return tuple(chosen)
    return None


def _solubility_search(H: Hypergraph, P: Partition, L: EdgeLattice,
                       record: bool = False):
    """Exhaustive solution search over matchings of size <= |P|-1.

    Returns (matching, proof) where matching is a tuple of edges (empty for
    the trivial solution) or None, and proof is a JSON-ready record of the
    exhausted search when ``record`` is set.
    """
    total = index_vector(P, range(H.n))
    proof: Optional[dict] = None
    if record:
        proof = {
            "index_of_vertex_set": list(total),
            "max_matching_size": P.d - 1,
            "realized_classes": [],
            "multisets_residue_feasible": 0,
            "realization_failures": 0,
        }
    if L.contains(total):
        return (), proof
    by_class = _edges_by_class(H, P)
    classes = sorted(by_class)
    if record:
        proof["realized_classes"] = [list(c) for c in classes]
    for size in range(1, P.d):
        for multiset in itertools.combinations_with_replacement(classes, size):
            remainder = total
            for c in multiset:
                remainder = _vec_sub(remainder, c)
            if not L.contains(remainder):
                continue
            if record:
                proof["multisets_residue_feasible"] += 1
            matching = _realize_multiset(by_class, multiset)
            if matching is not None:
                return matching, proof
            if record:
                proof["realization_failures"] += 1
    return None, proof


def is_soluble(H: Hypergraph, P: Partition, L: EdgeLattice
               ) -> Optional[Tuple[Tuple[int, ...], ...]]:
    """A matching M with |M| <= |P|-1 and i_P(V - V(M)) in L, or None.

    The empty tuple is a valid solution (i_P(V) already in L), so callers
    must distinguish None from falsy values.
    """
    if P.d != L.d:
        raise ValueError(f"partition has {P.d} parts, lattice dimension {L.d}")
    if P.n != H.n:
        raise ValueError("partition does not cover V(H)")
    matching, _ = _solubility_search(H, P, L)
    return matching


def is_soluble_unbounded(H: Hypergraph, P: Partition, L: EdgeLattice
                         ) -> Optional[Tuple[Tuple[int, ...], ...]]:
    """Like is_soluble but with no bound on the matching size.

    Test-support oracle: the bounded and unbounded forms agree on full
    pairs, and the equivalence is validated empirically rather than
    assumed.  The search memoizes on (next edge index, remaining index
    vector), which caps the state space at m times the coset count.
    """
    if P.d != L.d:
        raise ValueError(f"partition has {P.d} parts, lattice dimension {L.d}")
    if P.n != H.n:
        raise ValueError("partition does not cover V(H)")
    total = index_vector(P, range(H.n))
    edges = H.edges
    classes = [index_vector(P, e) for e in edges]
    dead: Set[Tuple[int, Vector]] = set()
    chosen: List[Tuple[int, ...]] = []
    used: Set[int] = set()

    def search(start: int, remainder: Vector) -> bool:
        if L.contains(remainder):
            return True
        key = (start, remainder)
        if key in dead:
            return False
        for j in range(start, len(edges)):
            e = edges[j]
            if used.isdisjoint(e):
                used.update(e)
                chosen.append(e)
                if search(j + 1, _vec_sub(remainder, classes[j])):
                    return True
                chosen.pop()
                used.difference_update(e)
        dead.add(key)
        return False

    if search(0, total):
        return tuple(chosen)
    return None


# -- partition listing -------------------------------------------------------


def _co_neighborhood_components(H: Hypergraph) -> List[List[int]]:
    """Vertex classes forced equal under any transferral-free compliance.

    Two vertices extending a common (k-1)-set into edges must share a part
    in every compliant partition, since their unit-vector difference would
    otherwise be a lattice member.  Union-find over those pairs yields the
    components; vertices in no such pair stay singletons.
    """
    parent = list(range(H.n))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    first_ext: Dict[Tuple[int, ...], int] = {}
    for e in H.edges:
        for i in range(H.k):
            rest = e[:i] + e[i + 1:]
            prev = first_ext.get(rest)
            if prev is None:
                first_ext[rest] = e[i]
            else:
                ra, rb = find(prev), find(e[i])
                if ra != rb:
                    parent[rb] = ra
    groups: Dict[int, List[int]] = {}
    for v in range(H.n):
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values())


@lru_cache(maxsize=None)
def _allowed_profile_table(L: EdgeLattice, k: int) -> np.ndarray:
    """Dense lookup over profile codes: table[code(v)] iff v in L."""
    d = L.d
    table = np.zeros((k + 1) ** d, dtype=bool)
    for v in all_k_vectors(d, k):
        code = 0
        for j in range(d):
            code += v[j] * (k + 1) ** j
        if L.contains(v):
            table[code] = True
    return table


def _compliant_rows(H: Hypergraph, d: int, L: EdgeLattice,
                    components: List[List[int]], require_all_parts: bool,
                    max_out: int) -> Tuple[int, List[Tuple[int, ...]]]:
    """Vertex-level compliant assignments, enumerated over components.

    Returns (true count, rows up to max_out).  Each row assigns every
    vertex of H a part in 0..d-1 such that every edge's index vector lies
    in L; rows appear in lexicographic order of the component assignment.
    """
    if H.n == 0:
        return (0, []) if require_all_parts else (1, [()])
    comp_of = [0] * H.n
    for ci, comp in enumerate(components):
        for v in comp:
            comp_of[v] = ci
    contracted = sorted({tuple(sorted(comp_of[v] for v in e)) for e in H.edges})
    flat, starts = group_edges_by_max(len(components), H.k, contracted)
    allowed = _allowed_profile_table(L, H.k)
    count, rows = compliant_assignments(len(components), d, H.k, flat, starts,
                                        allowed, require_all_parts, max_out)
    expanded = [tuple(int(row[comp_of[v]]) for v in range(H.n))
                for row in rows]
    return count, expanded


def list_partitions(H: Hypergraph, d: int, L: EdgeLattice,
                    method: str = "auto",
                    exhaustive_cap: int = 2_000_000) -> List[Partition]:
    """All ordered d-part partitions keeping every edge's index vector in L.

    Parts must be non-empty; order matters, so (X, Y) and (Y, X) are
    distinct outputs.  With ``method="auto"`` and a transferral-free
    lattice, vertices sharing a common (k-1)-neighborhood are contracted
    first, shrinking the d^n assignment space to d^c over components;
    ``method="exhaustive"`` skips the contraction and enumerates raw
    assignments, which the listing bound tests compare against.

    Raises ListingStallError (carrying any partial rows) when the
    assignment space or the output exceeds ``exhaustive_cap``.
    """
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    if L.d != d:
        raise ValueError(f"lattice dimension {L.d} differs from d={d}")
    if method not in ("auto", "exhaustive"):
        raise ValueError(f"unknown method {method!r}")
    if H.n == 0:
        return []
    if H.n >= H.k - 1:
        floor = Fraction(H.n, H.k) - 2 * H.k * (H.k - 2)
        if H.min_codegree() < floor:
            warnings.warn("codegree below the listing bound hypothesis; "
                          "the d^(2k-1) output bound may not hold",
                          stacklevel=2)
    if method == "auto" and is_transferral_free(L, d):
        components = _co_neighborhood_components(H)
    else:
        components = [[v] for v in range(H.n)]
    if d ** len(components) > exhaustive_cap:
        raise ListingStallError((), d ** len(components), exhaustive_cap)
    count, rows = _compliant_rows(H, d, L, components, True, exhaustive_cap)
    partitions = [Partition.from_assignment(row, d) for row in rows]
    if count > len(rows):
        raise ListingStallError(tuple(partitions), count, exhaustive_cap)
    return partitions


# -- parity family -----------------------------------------------------------


def in_Hnk(H: Hypergraph) -> Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """A bipartition (X, Y) with every edge odd in X and n/k - |X| odd.

    Candidates with both sides non-empty come from the compliant-partition
    listing under the odd lattice; the empty and full X are checked
    directly since the listing excludes them.  Each candidate is verified
    against the definition rather than trusted, and the first qualifying X
    (checked in listing order, empty side first, full side last) wins.
    """
    if H.n % H.k != 0:
        raise ValueError(f"n={H.n} not divisible by k={H.k}")
    quota = H.n // H.k

    def qualifies(side: Tuple[int, ...]) -> bool:
        if (quota - len(side)) % 2 == 0:
            return False
        xs = set(side)
        return all(len(xs.intersection(e)) % 2 == 1 for e in H.edges)

    everything = tuple(range(H.n))
    candidates: List[Tuple[int, ...]] = [()]
    if H.n > 0:
        for P in list_partitions(H, 2, odd_lattice(H.k)):
            candidates.append(P.parts[0])
            candidates.append(P.parts[1])
        candidates.append(everything)
    for X in candidates:
        if qualifies(X):
            rest = tuple(v for v in range(H.n) if v not in set(X))
            return (X, rest)
    return None


# -- full lattice enumeration -------------------------------------------------


class FullLatticeFamily(Sequence):
    """Deterministically ordered full lattices plus a completeness flag."""

    __slots__ = ("lattices", "complete")

    def __init__(self, lattices: Tuple[EdgeLattice, ...], complete: bool):
        self.lattices = lattices
        self.complete = complete

    def __getitem__(self, i):
        return self.lattices[i]

    def __len__(self) -> int:
        return len(self.lattices)

    def __repr__(self) -> str:
        return (f"FullLatticeFamily({len(self.lattices)} lattices, "
                f"complete={self.complete})")


@lru_cache(maxsize=None)
def _enumerate_full_lattices(d: int, k: int, budget: int) -> FullLatticeFamily:
    vectors = all_k_vectors(d, k)
    root = lattice_from((), d=d)
    seen = {root}
    frontier = [root]
    complete = True
    while frontier and complete:
        next_frontier = []
        for L in frontier:
            for v in vectors:
                if L.contains(v):
                    continue
                grown = L.extended(v)
                if grown in seen:
                    continue
                # A transferral survives every further extension, so no
                # full lattice sits above this one.
                if find_transferral(grown, d) is not None:
                    continue
                seen.add(grown)
                next_frontier.append(grown)
                if len(seen) > budget:
                    complete = False
                    break
            if not complete:
                break
        frontier = next_frontier
    full = [L for L in seen
            if is_full_index_set(lattice_k_vector_content(L, k), d, k)]
    full.sort(key=lambda L: L.basis)
    return FullLatticeFamily(tuple(full), complete)


def enumerate_full_lattices(d: int, k: int,
                            budget: int = 100_000) -> FullLatticeFamily:
    """All transferral-free lattices in Z^d with full k-vector content.

    Candidates are integer spans of k-vector subsets, grown one generator
    at a time; since extending a generating set only ever grows the span,
    any branch that acquires a transferral is pruned for good.  The result
    is deduplicated by canonical basis and sorted by it.  If the search
    exceeds ``budget`` distinct lattices the family is returned with
    ``complete=False``.
    """
    if not 1 <= d <= k:
        raise ValueError(f"need 1 <= d <= k, got d={d}, k={k}")
    return _enumerate_full_lattices(d, k, budget)


# -- certificate search -------------------------------------------------------


@lru_cache(maxsize=64)
def _compositions_of(total: int, parts: int) -> Tuple[Vector, ...]:
    return tuple(_compositions(total, parts))


def _compositions(total: int, parts: int) -> Iterator[Vector]:
    """Non-negative integer vectors of the given length summing to total."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


def _arrangements(counts: Vector) -> Iterator[Vector]:
    """Distinct label sequences with the given multiplicities, lex order."""
    total = sum(counts)
    remaining = list(counts)
    seq: List[int] = []

    def rec() -> Iterator[Vector]:
        if len(seq) == total:
            yield tuple(seq)
            return
        for label in range(len(remaining)):
            if remaining[label]:
                remaining[label] -= 1
                seq.append(label)
                yield from rec()
                seq.pop()
                remaining[label] += 1

    yield from rec()


def _sub_matchings(edges: Sequence[Tuple[int, ...]], max_size: int
                   ) -> Iterator[List[int]]:
    """Index lists of all non-empty matchings up to max_size edges."""
    chosen: List[int] = []
    used: Set[int] = set()

    def rec(start: int) -> Iterator[List[int]]:
        for j in range(start, len(edges)):
            if used.isdisjoint(edges[j]):
                chosen.append(j)
                used.update(edges[j])
                yield list(chosen)
                if len(chosen) < max_size:
                    yield from rec(j + 1)
                used.difference_update(edges[j])
                chosen.pop()

    if max_size >= 1:
        yield from rec(0)


_POOL_CAP = 100_000


@lru_cache(maxsize=8)
def _arrangement_pool(d: int, s: int):
    """All d^s label sequences as one array, grouped by label counts.

    Rows are in lexicographic order, so the index array stored for each
    count vector visits that composition's arrangements in the same order
    the one-at-a-time generator would.  Returns None when the pool would
    exceed _POOL_CAP rows; callers then fall back to lazy enumeration.
    """
    total = d ** s
    if total > _POOL_CAP:
        return None
    idx = np.arange(total, dtype=np.int64)
    arr = np.empty((total, s), dtype=np.int8)
    for j in range(s):
        arr[:, j] = (idx // d ** (s - 1 - j)) % d
    counts = np.stack([(arr == p).sum(axis=1) for p in range(d)], axis=1)
    key = counts @ ((s + 1) ** np.arange(d, dtype=np.int64))
    order = np.argsort(key, kind="stable")
    boundaries = np.flatnonzero(np.diff(key[order])) + 1
    by_counts = {}
    for group in np.split(order, boundaries):
        by_counts[tuple(int(c) for c in counts[group[0]])] = group
    return arr, by_counts


@lru_cache(maxsize=None)
def _residue_ids(L: EdgeLattice, k: int) -> Tuple[np.ndarray, dict]:
    """Residue ids of every k-vector, indexed by profile code.

    The table lets a whole block of extensions compare edge residues
    against a target with one array operation; the dict maps residue
    vectors back to their ids for target lookups.
    """
    d = L.d
    ids: Dict[Vector, int] = {}
    table = np.full((k + 1) ** d, -1, dtype=np.int16)
    for v in all_k_vectors(d, k):
        code = sum(v[j] * (k + 1) ** j for j in range(d))
        table[code] = ids.setdefault(L.residue(v), len(ids))
    return table, ids


class _ExtensionFilters:
    """Sound solubility filters for the k=3 certificate sweep.

    Each filter set collects residues of matchings that exist for EVERY
    assignment of S with the given part counts, so a residue hit proves
    the whole batch of extensions soluble without materializing any of
    them.  The S-level edge conditions quantify over all placements of
    the S vertices involved, which keeps the conclusion assignment-free.
    """

    def __init__(self, H: Hypergraph, S: Tuple[int, ...], W: List[int]):
        edge_set = H.edge_set
        pairs = list(itertools.combinations(range(len(W)), 2))
        self.all_u_pairs = [
            (a, b) for a, b in pairs
            if all(tuple(sorted((W[a], W[b], u))) in edge_set for u in S)]
        self.all_pair_singles = [
            a for a in range(len(W))
            if all(tuple(sorted((u, up, W[a]))) in edge_set
                   for u, up in itertools.combinations(S, 2))]
        self.all_triples_present = all(
            tuple(sorted(t)) in edge_set
            for t in itertools.combinations(S, 3))

    def build(self, d: int, local: Vector, sub_edges: Sequence[Tuple[int, ...]],
              res) -> dict:
        """Residue sets keyed by the S part counts each matching consumes."""
        unit = [tuple(1 if j == p else 0 for j in range(d)) for p in range(d)]

        def cls(vs) -> Vector:
            counts = [0] * d
            for v in vs:
                counts[local[v]] += 1
            return tuple(counts)

        b1 = {p: set() for p in range(d)}
        for a, b in self.all_u_pairs:
            base = cls((a, b))
            for p in range(d):
                b1[p].add(res(_vec_add(base, unit[p])))
        b2 = {pq: set() for pq in
              itertools.combinations_with_replacement(range(d), 2)}
        for a in self.all_pair_singles:
            base = cls((a,))
            for p, q in b2:
                b2[(p, q)].add(res(_vec_add(_vec_add(base, unit[p]), unit[q])))
        b3 = {}
        if self.all_triples_present:
            for trip in itertools.combinations_with_replacement(range(d), 3):
                vec = (0,) * d
                for p in trip:
                    vec = _vec_add(vec, unit[p])
                b3[trip] = res(vec)
        c1 = {p: set() for p in range(d)}
        c2 = {pq: set() for pq in
              itertools.combinations_with_replacement(range(d), 2)}
        if d >= 3:
            for e in sub_edges:
                ecls = cls(e)
                for a, b in self.all_u_pairs:
                    if a in e or b in e:
                        continue
                    base = _vec_add(ecls, cls((a, b)))
                    for p in range(d):
                        c1[p].add(res(_vec_add(base, unit[p])))
            for (a, b), (c, f) in itertools.combinations(self.all_u_pairs, 2):
                if len({a, b, c, f}) < 4:
                    continue
                base = cls((a, b, c, f))
                for p, q in c2:
                    c2[(p, q)].add(
                        res(_vec_add(_vec_add(base, unit[p]), unit[q])))
        return {"b1": b1, "b2": b2, "b3": b3, "c1": c1, "c2": c2}

    @staticmethod
    def covers(sets: dict, target: Vector, x: Vector) -> bool:
        def supports(labels) -> bool:
            need: Dict[int, int] = {}
            for p in labels:
                need[p] = need.get(p, 0) + 1
            return all(x[p] >= c for p, c in need.items())

        for p, rs in sets["b1"].items():
            if x[p] and target in rs:
                return True
        for pq, rs in sets["b2"].items():
            if supports(pq) and target in rs:
                return True
        for trip, r in sets["b3"].items():
            if supports(trip) and target == r:
                return True
        for p, rs in sets["c1"].items():
            if x[p] and target in rs:
                return True
        for pq, rs in sets["c2"].items():
            if supports(pq) and target in rs:
                return True
        return False


def _scan_subset(H: Hypergraph, S: Tuple[int, ...],
                 families: Mapping[int, FullLatticeFamily],
                 soluble_memo: Set[Tuple[EdgeLattice, Vector]]
                 ) -> Optional[Certificate]:
    """Try every full pair reachable from this cover set; first hit wins.

    Listing compliance on H[V-S] means any edge off the lattice must meet
    S, so the cover condition needs no separate check.  Extensions proven
    soluble by batch filters are skipped; the rest run the exact search.
    """
    k = H.k
    keep = set(S)
    W = [v for v in range(H.n) if v not in keep]
    H_sub = H.induced(W)
    components = _co_neighborhood_components(H_sub)
    filters = _ExtensionFilters(H, S, W) if k == 3 else None
    template = [0] * H.n
    w_index = {v: i for i, v in enumerate(W)}
    s_index = {v: j for j, v in enumerate(S)}
    meeting = [e for e in H.edges if not keep.isdisjoint(e)]
    meet_s_pos = [[s_index[v] for v in e if v in keep] for e in meeting]
    meet_w_pos = [[w_index[v] for v in e if v not in keep] for e in meeting]
    # Matching residues live in the subgroup of cosets with coordinate sum
    # divisible by k; the whole-listing skip compares against that
    # subgroup's order, which only matches the targets when k divides n.
    divisible = H.n % k == 0
    for d in range(1, k + 1):
        # A single edge is a matching of size 1 <= |P|-1 only for d >= 2,
        # so the batched residue mask below is unsound at d = 1.
        pool = _arrangement_pool(d, len(S)) if d >= 2 else None
        if pool is not None and len(pool[0]) * max(1, len(meeting)) > 50_000_000:
            pool = None
        if pool is not None:
            arr, by_counts = pool
        code_s_cache: List[Optional[np.ndarray]] = [None]

        def s_codes() -> np.ndarray:
            if code_s_cache[0] is None:
                label_pow = (k + 1) ** np.arange(d, dtype=np.int16)
                vertex_pow = label_pow[arr]
                cs = np.zeros((len(arr), len(meeting)), dtype=np.int16)
                for col, pos in enumerate(meet_s_pos):
                    cs[:, col] = vertex_pow[:, pos].sum(axis=1, dtype=np.int16)
                code_s_cache[0] = cs
            return code_s_cache[0]

        for L in families[d]:
            order = coset_group_order(L, d, k)
            zero_residue = (0,) * d
            residue_memo: Dict[Vector, Vector] = {}

            def res(v: Vector) -> Vector:
                r = residue_memo.get(v)
                if r is None:
                    r = L.residue(v)
                    residue_memo[v] = r
                return r

            space = d ** len(components)
            if space > 500_000:
                raise RuntimeError(
                    f"certificate listing space {space} out of range")
            _, rows = _compliant_rows(H_sub, d, L, components, False, space)
            row_codes = None
            if pool is not None:
                res_table, res_id_of = _residue_ids(L, k)
                if rows and meeting:
                    label_pow = (k + 1) ** np.arange(d, dtype=np.int16)
                    pw = label_pow[np.array(rows, dtype=np.int8)]
                    row_codes = np.zeros((len(rows), len(meeting)),
                                         dtype=np.int16)
                    for col, wpos in enumerate(meet_w_pos):
                        if wpos:
                            row_codes[:, col] = pw[:, wpos].sum(
                                axis=1, dtype=np.int16)
            for r_i, local in enumerate(rows):
                w = tuple(local.count(p) for p in range(d))
                reachable = set()
                sub_classes = []
                for e in H_sub.edges:
                    counts = [0] * d
                    for v in e:
                        counts[local[v]] += 1
                    sub_classes.append(tuple(counts))
                for picked in _sub_matchings(H_sub.edges, d - 1):
                    total = (0,) * d
                    for j in picked:
                        total = _vec_add(total, sub_classes[j])
                    reachable.add(res(total))
                if (divisible and order is not None
                        and len(reachable | {zero_residue}) >= order):
                    continue
                row_res = None
                filter_sets = None
                for v in range(len(W)):
                    template[W[v]] = local[v]
                for x in _compositions_of(len(S), d):
                    if any(w[p] + x[p] == 0 for p in range(d)):
                        continue
                    target = res(_vec_add(w, x))
                    if target == zero_residue or target in reachable:
                        continue
                    if pool is not None:
                        ridx = by_counts[x]
                        if row_res is None and row_codes is not None:
                            row_res = res_table[s_codes() + row_codes[r_i][None, :]]
                        if row_res is not None:
                            # An edge whose residue equals the target is a
                            # one-edge matching witnessing solubility.
                            tid = res_id_of.get(target, -1)
                            if tid >= 0:
                                ridx = ridx[~(row_res[ridx] == tid).any(axis=1)]
                        if not len(ridx):
                            continue
                        survivors = (arr[i].tolist() for i in ridx)
                    else:
                        survivors = _arrangements(x)
                    if filters is not None:
                        if filter_sets is None:
                            filter_sets = filters.build(d, local, H_sub.edges,
                                                        res)
                        if _ExtensionFilters.covers(filter_sets, target, x):
                            continue
                    for sigma in survivors:
                        for j, u in enumerate(S):
                            template[u] = sigma[j]
                        key = tuple(template)
                        memo_key = (L, key)
                        if memo_key in soluble_memo:
                            continue
                        P = Partition.from_assignment(key, d)
                        matching, proof = _solubility_search(H, P, L,
                                                             record=True)
                        if matching is None:
                            return Certificate(P, L, tuple(S), proof)
                        soluble_memo.add(memo_key)
    return None


def has_certificate(H: Hypergraph, s: Optional[int] = None,
                    budget: Optional[int] = None,
                    resume_from: int = 0) -> Optional[Certificate]:
    """Search for an s-vertex certificate of non-matchability.

    Scans s-subsets of V in lexicographic order.  For each subset S, every
    full lattice of every dimension d <= k is tried: partitions of V-S
    compliant with the lattice are listed (empty parts allowed, since S
    may complete them), extended by every assignment of S's vertices, and
    the first extension forming an insoluble full pair is returned as a
    certificate with cover set S.

    ``budget`` caps the subsets examined in this call; exceeding it raises
    CertificateBudgetError whose ``next_index`` lets a caller resume via
    ``resume_from``.  Returns None when the scan finishes without a hit,
    vacuously so for n < s.
    """
    k = H.k
    if s is None:
        s = default_cover_size(k)
    if s < 0:
        raise ValueError(f"cover size must be >= 0, got {s}")
    if s > H.n:
        return None
    families = {d: enumerate_full_lattices(d, k) for d in range(1, k + 1)}
    soluble_memo: Set[Tuple[EdgeLattice, Vector]] = set()
    subsets = itertools.islice(itertools.combinations(range(H.n), s),
                               resume_from, None)
    examined = 0
    for S in subsets:
        if budget is not None and examined >= budget:
            raise CertificateBudgetError(examined, budget,
                                         resume_from + examined)
        examined += 1
        found = _scan_subset(H, S, families, soluble_memo)
        if found is not None:
            return found
    return None


def verify_certificate(H: Hypergraph, cert: Certificate) -> bool:
    """Independent re-check of a certificate; no trust in its provenance.

    Confirms the pair is full, every off-lattice edge meets the cover set,
    and a fresh exhaustive search finds no solution.  Deterministic and
    idempotent.
    """
    P, L = cert.partition, cert.lattice
    if P.n != H.n or P.d != L.d:
        return False
    cover = set(cert.cover_set)
    if len(cover) != len(cert.cover_set):
        return False
    if not all(0 <= v < H.n for v in cover):
        return False
    if not is_full_pair(P, L, H.k):
        return False
    for e in H.edges:
        if not L.contains(index_vector(P, e)) and cover.isdisjoint(e):
            return False
    matching, _ = _solubility_search(H, P, L)
    return matching is None


# -- deciders ------------------------------------------------------------------


def _validity_note(H: Hypergraph, cfg: PipelineConfig) -> Optional[str]:
    if H.n < cfg.validity_floor:
        return (f"n={H.n} below validity floor {cfg.validity_floor}; "
                "completeness is asymptotic")
    return None


def decide_brute(H: Hypergraph, budget: int = DEFAULT_BUDGET) -> Decision:
    """Exact verdict by exhaustive search, with a perfect matching witness."""
    result = has_perfect_matching(H, budget)
    if result.status == "yes":
        evidence = {"kind": "matching", "edges": [list(e) for e in result.witness]}
    elif result.status == "no":
        evidence = {"kind": "exhausted-search"}
    else:
        evidence = {"kind": "budget-exhausted"}
    return Decision(result.status, evidence, "brute",
                    budgets={"nodes": result.nodes})


def decide_slow(H: Hypergraph, cfg: Optional[PipelineConfig] = None) -> Decision:
    """Structural decision: pipeline pair, solubility, parity family.

    Requires minimum codegree at least n/k (subject to the config's
    codegree switch).  The verdict is yes exactly when the pipeline pair
    is soluble and no parity-family bipartition exists.  If the pipeline
    pair fails the fullness check (possible on small instances), the
    trivial pair ({V}, <(k)>) stands in, which is full for every k.
    """
    cfg = cfg or PipelineConfig()
    note = _validity_note(H, cfg)
    if H.n % H.k != 0:
        return Decision("no", {"kind": "divisibility", "n": H.n, "k": H.k},
                        "slow", note)
    check_codegree(H, Fraction(1, H.k), cfg)
    result = run_pipeline(H, cfg)
    P, L = result.p0_prime, result.lattice
    trivial_fallback = False
    if not is_full_pair(P, L, H.k):
        P = Partition([range(H.n)])
        L = lattice_from([(H.k,)], d=1)
        trivial_fallback = True
    solution, proof = _solubility_search(H, P, L, record=True)
    if solution is None:
        evidence = {"kind": "insoluble-pair", "parts": P,
                    "lattice": L, "mu": result.mu,
                    "trivial_fallback": trivial_fallback, "proof": proof}
        return Decision("no", evidence, "slow", note)
    family = in_Hnk(H)
    if family is not None:
        evidence = {"kind": "parity-family", "x": list(family[0]),
                    "y": list(family[1])}
        return Decision("no", evidence, "slow", note)
    evidence = {"kind": "soluble-pair", "solution": [list(e) for e in solution],
                "parts": P, "lattice": L, "mu": result.mu,
                "trivial_fallback": trivial_fallback}
    return Decision("yes", evidence, "slow", note)


def decide_fast(H: Hypergraph, cfg: Optional[PipelineConfig] = None) -> Decision:
    """Certificate decision: no exactly when a certificate exists.

    Requires minimum codegree at least n/k (subject to the config's
    codegree switch).  Divisibility is checked first: without it no
    perfect matching exists, and for n below the cover size the subset
    scan could not witness that.  A budget-exhausted search yields
    verdict unknown rather than a guess.
    """
    cfg = cfg or PipelineConfig()
    note = _validity_note(H, cfg)
    if H.n % H.k != 0:
        return Decision("no", {"kind": "divisibility", "n": H.n, "k": H.k},
                        "fast", note)
    check_codegree(H, Fraction(1, H.k), cfg)
    s = default_cover_size(H.k)
    if H.n < s:
        extra = (f"n={H.n} below cover size {s}; certificate scan is vacuous")
        note = f"{note}; {extra}" if note else extra
    try:
        cert = has_certificate(H, s, budget=cfg.budget)
    except CertificateBudgetError as exc:
        return Decision("unknown",
                        {"kind": "budget-exhausted",
                         "subsets_done": exc.subsets_done,
                         "next_index": exc.next_index},
                        "fast", note,
                        budgets={"subset_budget": exc.budget})
    if cert is not None:
        return Decision("no", {"kind": "certificate", "certificate": cert},
                        "fast", note)
    return Decision("yes", {"kind": "no-certificate", "cover_size": s},
                    "fast", note)

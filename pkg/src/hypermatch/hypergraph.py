"""k-uniform hypergraphs: representation, codegree queries, generators, and
the text serialization format.

Vertices are 0-based integers.  Edges are stored canonically as sorted
k-tuples, deduplicated and lexicographically ordered, so two hypergraphs
are equal iff their serializations are byte-identical.
"""

from __future__ import annotations

import itertools
import random
import warnings
from typing import Iterable, Optional, Sequence

__all__ = [
    "Hypergraph",
    "build",
    "complete",
    "space_barrier",
    "parity_barrier_even",
    "parity_barrier_odd",
    "anchored_barrier",
    "random_dense",
    "parse",
    "serialize",
]


class Hypergraph:
    """An n-vertex k-uniform hypergraph.

    Immutable after construction.  Derived views (edge set, bitmasks,
    per-vertex adjacency) are built lazily and cached, since codegree and
    link queries dominate runtime.
    """

    __slots__ = ("n", "k", "edges", "index_map", "_edge_set", "_edge_masks",
                 "_by_vertex", "_pair_counts", "_match_table")

    def __init__(self, n: int, k: int, edges: Iterable[Iterable[int]] = ()):
        if k < 2:
            raise ValueError(f"uniformity k must be >= 2, got {k}")
        if n < 0:
            raise ValueError(f"vertex count must be >= 0, got {n}")
        canonical = set()
        for e in edges:
            t = tuple(sorted(e))
            if len(t) != k or len(set(t)) != k:
                raise ValueError(f"edge {t} does not have {k} distinct vertices")
            if t[0] < 0 or t[-1] >= n:
                raise ValueError(f"edge {t} has out-of-range vertices for n={n}")
            canonical.add(t)
        self.n = n
        self.k = k
        self.edges: tuple[tuple[int, ...], ...] = tuple(sorted(canonical))
        self.index_map: Optional[tuple[int, ...]] = None
        self._edge_set: Optional[frozenset] = None
        self._edge_masks = None
        self._by_vertex = None
        self._pair_counts = None
        self._match_table = None

    # -- derived views -------------------------------------------------

    @property
    def edge_set(self) -> frozenset:
        if self._edge_set is None:
            self._edge_set = frozenset(self.edges)
        return self._edge_set

    @property
    def edge_masks(self) -> tuple[int, ...]:
        """Each edge as a vertex bitmask (bit v set iff v in edge)."""
        if self._edge_masks is None:
            masks = []
            for e in self.edges:
                m = 0
                for v in e:
                    m |= 1 << v
                masks.append(m)
            self._edge_masks = tuple(masks)
        return self._edge_masks

    @property
    def edges_by_vertex(self) -> tuple[tuple[int, ...], ...]:
        """For each vertex, the indices of edges containing it."""
        if self._by_vertex is None:
            adj: list[list[int]] = [[] for _ in range(self.n)]
            for i, e in enumerate(self.edges):
                for v in e:
                    adj[v].append(i)
            self._by_vertex = tuple(tuple(a) for a in adj)
        return self._by_vertex

    # -- queries ---------------------------------------------------------

    def degree_of_set(self, S: Iterable[int]) -> int:
        """Number of edges containing every vertex of S (|S| <= k)."""
        s = frozenset(S)
        if len(s) > self.k:
            raise ValueError(f"|S|={len(s)} exceeds k={self.k}")
        for v in s:
            if not 0 <= v < self.n:
                raise ValueError(f"vertex {v} out of range")
        if not s:
            return len(self.edges)
        v0 = min(s, key=lambda v: len(self.edges_by_vertex[v]))
        return sum(1 for i in self.edges_by_vertex[v0] if s.issubset(self.edges[i]))

    def min_codegree(self) -> int:
        """Minimum degree over all (k-1)-subsets of the vertex set."""
        if self.n < self.k - 1:
            raise ValueError(f"n={self.n} < k-1={self.k - 1}")
        counts: dict[tuple[int, ...], int] = {}
        for e in self.edges:
            for sub in itertools.combinations(e, self.k - 1):
                counts[sub] = counts.get(sub, 0) + 1
        total = _binomial(self.n, self.k - 1)
        if len(counts) < total:
            return 0
        return min(counts.values()) if counts else 0

    def induced(self, W: Iterable[int]) -> "Hypergraph":
        """Sub-hypergraph on W, relabeled order-preservingly.

        sorted(W)[i] becomes vertex i of the result; the original labels
        are kept on the result as ``index_map``.
        """
        vs = sorted(set(W))
        for v in vs:
            if not 0 <= v < self.n:
                raise ValueError(f"vertex {v} out of range")
        relabel = {v: i for i, v in enumerate(vs)}
        keep = frozenset(vs)
        sub = [tuple(relabel[v] for v in e) for e in self.edges
               if keep.issuperset(e)]
        out = Hypergraph(len(vs), self.k, sub)
        out.index_map = tuple(vs)
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return (self.n, self.k, self.edges) == (other.n, other.k, other.edges)

    def __hash__(self) -> int:
        return hash((self.n, self.k, self.edges))

    def __repr__(self) -> str:
        return f"Hypergraph(n={self.n}, k={self.k}, m={len(self.edges)})"


def build(n: int, k: int, edges: Iterable[Iterable[int]]) -> Hypergraph:
    """Canonical (sorted, deduplicated) hypergraph from an edge list."""
    return Hypergraph(n, k, edges)


def _binomial(n: int, r: int) -> int:
    if r < 0 or r > n:
        return 0
    out = 1
    for i in range(r):
        out = out * (n - i) // (i + 1)
    return out


# -- generators ----------------------------------------------------------


def complete(n: int, k: int) -> Hypergraph:
    """The complete k-graph on n vertices."""
    return Hypergraph(n, k, itertools.combinations(range(n), k))


def space_barrier(n: int, k: int, s: int) -> Hypergraph:
    """All k-sets meeting the first s vertices.

    Minimum codegree and maximum matching size both equal s, so for
    s < n/k no perfect matching exists.
    """
    if s < 0 or s > n:
        raise ValueError(f"s={s} out of range for n={n}")
    if s * k >= n and n >= k:
        warnings.warn(f"space_barrier with s={s} >= n/k={n}/{k} loses its "
                      "matching-size obstruction", stacklevel=2)
    barrier = set(range(s))
    edges = [e for e in itertools.combinations(range(n), k)
             if barrier.intersection(e)]
    return Hypergraph(n, k, edges)


def _parity_barrier(n: int, k: int, x: int, parity: int) -> Hypergraph:
    if x < 0 or x > n:
        raise ValueError(f"x={x} out of range for n={n}")
    X = set(range(x))
    edges = [e for e in itertools.combinations(range(n), k)
             if len(X.intersection(e)) % 2 == parity]
    return Hypergraph(n, k, edges)


def parity_barrier_even(n: int, k: int, x: int) -> Hypergraph:
    """All k-sets meeting the first x vertices in an even number of vertices."""
    return _parity_barrier(n, k, x, 0)


def parity_barrier_odd(n: int, k: int, x: int) -> Hypergraph:
    """All k-sets meeting the first x vertices in an odd number of vertices."""
    return _parity_barrier(n, k, x, 1)


_ANCHOR_FREE_CLASSES = frozenset({(3, 0, 1), (0, 3, 1), (0, 0, 4), (2, 2, 0),
                                  (1, 1, 2)})


def anchored_barrier(n: int) -> Hypergraph:
    """4-uniform three-part construction with a distinguished anchor vertex.

    Parts of sizes (n/3-2, n/3, n/3+2).  Edges are the 4-sets whose
    part-intersection profile is (3,0,1), (0,3,1), (0,0,4), (2,2,0) or
    (1,1,2), plus the (0,1,3)-profile 4-sets through the anchor (the first
    vertex of the middle part).  Every (0,1,3) edge shares the anchor, so a
    matching contains at most one of them; counting part intersections mod 3
    then rules out a perfect matching even though the vertex-set profile
    lies in the lattice spanned by the edge profiles.
    """
    if n % 12 != 0 or n < 12:
        raise ValueError(f"n={n} must be a positive multiple of 12")
    a = n // 3 - 2
    b = n // 3
    bounds = (a, a + b)
    anchor = a

    def profile(e: tuple[int, ...]) -> tuple[int, int, int]:
        c = [0, 0, 0]
        for v in e:
            c[0 if v < bounds[0] else 1 if v < bounds[1] else 2] += 1
        return (c[0], c[1], c[2])

    edges = []
    for e in itertools.combinations(range(n), 4):
        p = profile(e)
        if p in _ANCHOR_FREE_CLASSES:
            edges.append(e)
        elif p == (0, 1, 3) and anchor in e:
            edges.append(e)
    return Hypergraph(n, 4, edges)


def random_dense(n: int, k: int, target_codegree: int, seed: int) -> Hypergraph:
    """Seeded random hypergraph repaired up to a minimum-codegree target.

    Starts from density 1/2, then scans (k-1)-sets in canonical order and
    adds random missing extensions until every codegree reaches the target
    (generator version "v1"; same arguments always give the same result).
    """
    if not 0 <= target_codegree <= max(n - k + 1, 0):
        raise ValueError(f"target codegree {target_codegree} not in "
                         f"[0, {max(n - k + 1, 0)}]")
    rng = random.Random(seed)
    edges = {e for e in itertools.combinations(range(n), k)
             if rng.random() < 0.5}
    if target_codegree > 0:
        counts: dict[tuple[int, ...], int] = {}
        for e in edges:
            for sub in itertools.combinations(e, k - 1):
                counts[sub] = counts.get(sub, 0) + 1
        for sub in itertools.combinations(range(n), k - 1):
            deficit = target_codegree - counts.get(sub, 0)
            if deficit <= 0:
                continue
            pool = [v for v in range(n)
                    if v not in sub and tuple(sorted(sub + (v,))) not in edges]
            rng.shuffle(pool)
            for v in pool[:deficit]:
                e = tuple(sorted(sub + (v,)))
                edges.add(e)
                for s2 in itertools.combinations(e, k - 1):
                    counts[s2] = counts.get(s2, 0) + 1
    return Hypergraph(n, k, edges)


# -- serialization ---------------------------------------------------------


def serialize(H: Hypergraph) -> str:
    """Canonical text form: "n k" header, one sorted edge per line."""
    lines = [f"{H.n} {H.k}"]
    lines.extend(" ".join(str(v) for v in e) for e in H.edges)
    return "\n".join(lines) + "\n"


def parse(text: str) -> Hypergraph:
    """Inverse of serialize; tolerates blank lines and '#' comments."""
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise ValueError("empty hypergraph file")
    header = lines[0].split()
    if len(header) != 2:
        raise ValueError(f"malformed header {lines[0]!r}; expected 'n k'")
    try:
        n, k = int(header[0]), int(header[1])
    except ValueError:
        raise ValueError(f"malformed header {lines[0]!r}; expected integers")
    edges = []
    for line in lines[1:]:
        parts = line.split()
        try:
            e = [int(p) for p in parts]
        except ValueError:
            raise ValueError(f"bad edge line {line!r}")
        if len(e) != k:
            raise ValueError(f"edge {line!r} has {len(e)} vertices, expected {k}")
        edges.append(e)
    return Hypergraph(n, k, edges)

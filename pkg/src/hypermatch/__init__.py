"""Decision engine for perfect matchings in dense k-uniform hypergraphs.

Given an n-vertex k-uniform hypergraph whose minimum codegree is at least
n/k, a structural dichotomy holds: either a perfect matching exists, or the
hypergraph carries a polynomially checkable divisibility-style obstruction.
This package implements the resulting polynomial-time decision procedures
(a lattice-pipeline route and a faster certificate search), the exact
brute-force oracle they are validated against, and generators for the
extremal constructions that make the codegree threshold tight.
"""

from .decision import (
    Certificate,
    CertificateBudgetError,
    Decision,
    FullLatticeFamily,
    ListingStallError,
    decide_brute,
    decide_fast,
    decide_slow,
    enumerate_full_lattices,
    has_certificate,
    in_Hnk,
    is_soluble,
    is_soluble_unbounded,
    list_partitions,
    verify_certificate,
)
from .hypergraph import (
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
from .lattice import (
    EdgeLattice,
    Partition,
    coset_group_order,
    edge_index_set,
    index_vector,
    lattice_contains,
    lattice_from,
)
from .oracle import (
    BudgetExceededError,
    MatchResult,
    has_perfect_matching,
    max_matching_size,
    pm_on_union,
)
from .reachability import (
    CodegreeHypothesisError,
    PartitionPipelineResult,
    PipelineConfig,
    PipelineInvariantError,
    reachable_pair,
    run_pipeline,
)

__version__ = "0.1.0"

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
    "BudgetExceededError",
    "MatchResult",
    "has_perfect_matching",
    "max_matching_size",
    "pm_on_union",
    "EdgeLattice",
    "Partition",
    "index_vector",
    "edge_index_set",
    "lattice_from",
    "lattice_contains",
    "coset_group_order",
    "CodegreeHypothesisError",
    "PartitionPipelineResult",
    "PipelineConfig",
    "PipelineInvariantError",
    "reachable_pair",
    "run_pipeline",
    "Certificate",
    "CertificateBudgetError",
    "Decision",
    "FullLatticeFamily",
    "ListingStallError",
    "decide_brute",
    "decide_fast",
    "decide_slow",
    "enumerate_full_lattices",
    "has_certificate",
    "in_Hnk",
    "is_soluble",
    "is_soluble_unbounded",
    "list_partitions",
    "verify_certificate",
    "__version__",
]

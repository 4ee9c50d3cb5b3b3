"""Connected fair detachments of edge-colored multiset hypergraphs.

The package builds fair detachments (splitting one vertex into n parts so
that degrees and edge multiplicities divide as evenly as possible while
preserving per-color connectivity where the wing margin permits) and uses
them to construct connected Baranyai-type decompositions, embeddings of
partial factorizations, and non-uniform factorizations.
"""

from .embeddings import (
    check_partial_necessary,
    embed_friendly,
    embed_minus_v,
    embed_partial_r,
    embed_r_to_s,
    is_admissible,
    minus_v_obstructions,
)
from .engine import DetachmentResult, StepRecord, build_split_request, detach
from .errors import (
    DomainError,
    HyperdetachError,
    InfeasibleSplitError,
    InternalConsistencyError,
    PreconditionError,
)
from .factorization import (
    FactorPlan,
    baranyai_connected,
    factorize_nonuniform,
    solve_edge_type_matrix,
)
from .hypergraph import EdgeInstance, Hinge, Hypergraph, build_edges, canon_occ
from .laminar import (
    SplitRequest,
    fair_split,
    fair_split_bruteforce,
    is_laminar,
    split_is_fair,
)
from .verify import (
    verify_complete,
    verify_detachment,
    verify_detachment_parts,
    verify_extension,
    verify_factorization,
)
from .wings import Wing, connectivity_margin, is_cut_vertex, omega, wing_decomposition

__version__ = "0.1.0"

__all__ = [
    "DetachmentResult",
    "DomainError",
    "EdgeInstance",
    "FactorPlan",
    "Hinge",
    "HyperdetachError",
    "Hypergraph",
    "InfeasibleSplitError",
    "InternalConsistencyError",
    "PreconditionError",
    "SplitRequest",
    "StepRecord",
    "Wing",
    "baranyai_connected",
    "build_edges",
    "build_split_request",
    "canon_occ",
    "check_partial_necessary",
    "connectivity_margin",
    "detach",
    "embed_friendly",
    "embed_minus_v",
    "embed_partial_r",
    "embed_r_to_s",
    "factorize_nonuniform",
    "fair_split",
    "fair_split_bruteforce",
    "is_admissible",
    "is_cut_vertex",
    "is_laminar",
    "minus_v_obstructions",
    "omega",
    "solve_edge_type_matrix",
    "split_is_fair",
    "verify_complete",
    "verify_detachment",
    "verify_detachment_parts",
    "verify_extension",
    "verify_factorization",
    "wing_decomposition",
    "__version__",
]

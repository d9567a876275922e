"""Uniform facet complexes, minor searches, and flat-embeddability verdicts."""

from .complexes import (
    UniformComplex,
    build_complex,
    canonical_key,
    canonical_labeling,
    face_key,
    is_isomorphic,
    strip_isolated,
    subcomplex,
    support_key,
)
from .connectivity import (
    SkeletonGraph,
    VertexCut,
    contractible_edge,
    enumerate_cuts,
    is_k_connected,
    one_skeleton,
    vertex_connectivity,
)
from .errors import HypergraphError
from .generators import (
    BuildStep,
    BuildTrace,
    complete_bipartite_uniform,
    complete_uniform,
    projective_plane,
    replay_trace,
    simplex_boundary,
    staged_build,
)
from .homology import (
    HomologyProfile,
    ManifoldCertificate,
    ShapeReport,
    certify_ball,
    certify_sphere,
    fundamental_group_status,
    homology,
    rd_shape_check,
)
from .jsonio import VERSION, load_complex, parse_complex, serialize
from .minors import (
    MinorOutcome,
    MinorWitness,
    SearchBudget,
    brute_force_minor,
    contract,
    delete_face,
    delete_facet,
    has_minor,
    merge_multiples,
    verify_witness,
    witness_problems,
)
from .recognizer import (
    EMBEDDABLE,
    MINOR_FREE_UNVERIFIED,
    NON_EMBEDDABLE,
    UNKNOWN,
    PreconditionReport,
    Verdict,
    bipartite_target,
    check_preconditions,
    is_embeddable,
    plain_k33,
    wagner_d2,
)
from .structure import (
    Bridge,
    Ear,
    EarDecomposition,
    MarkedComponent,
    PairVerdict,
    SegmentPartition,
    bridges,
    classify_pair,
    ear_decomposition,
    marked_s_decomposition,
    reassemble,
    segments,
    verify_ear_decomposition,
)

__version__ = VERSION

__all__ = [
    "EMBEDDABLE",
    "MINOR_FREE_UNVERIFIED",
    "NON_EMBEDDABLE",
    "UNKNOWN",
    "Bridge",
    "BuildStep",
    "BuildTrace",
    "Ear",
    "EarDecomposition",
    "HomologyProfile",
    "HypergraphError",
    "ManifoldCertificate",
    "MarkedComponent",
    "MinorOutcome",
    "MinorWitness",
    "PairVerdict",
    "PreconditionReport",
    "SearchBudget",
    "SegmentPartition",
    "ShapeReport",
    "SkeletonGraph",
    "UniformComplex",
    "Verdict",
    "VertexCut",
    "bridges",
    "brute_force_minor",
    "build_complex",
    "canonical_key",
    "canonical_labeling",
    "certify_ball",
    "certify_sphere",
    "bipartite_target",
    "check_preconditions",
    "classify_pair",
    "complete_bipartite_uniform",
    "complete_uniform",
    "contract",
    "contractible_edge",
    "delete_face",
    "delete_facet",
    "ear_decomposition",
    "enumerate_cuts",
    "face_key",
    "fundamental_group_status",
    "has_minor",
    "homology",
    "is_embeddable",
    "is_isomorphic",
    "is_k_connected",
    "load_complex",
    "marked_s_decomposition",
    "merge_multiples",
    "one_skeleton",
    "parse_complex",
    "plain_k33",
    "projective_plane",
    "rd_shape_check",
    "reassemble",
    "replay_trace",
    "segments",
    "serialize",
    "simplex_boundary",
    "staged_build",
    "strip_isolated",
    "subcomplex",
    "support_key",
    "vertex_connectivity",
    "verify_ear_decomposition",
    "verify_witness",
    "wagner_d2",
    "witness_problems",
]

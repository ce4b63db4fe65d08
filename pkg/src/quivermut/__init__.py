"""Exact-integer engine for exchange-matrix mutation and unfolding truncations.

The package mutates sign-skew-symmetric exchange matrices and their
c-vectors, checks sign-coherence and total mutability exhaustively at desk
scale, computes maximal green sequences via admissible source numberings,
and builds finite truncations of the locally finite unfolding quiver on
which orbit-mutation provably tracks ordinary mutation through folding.
"""

from .matrices import (
    ClassificationReport,
    ExchangeMatrix,
    MatrixFormatError,
    MutabilityReport,
    apply_sequence,
    check_total_mutability,
    classify,
    delta_edges,
    find_symmetrizer,
    format_matrix,
    is_acyclic,
    is_sign_skew_symmetric,
    is_skew_symmetric,
    mutate,
    parse_matrix,
)
from .seeds import (
    CoherenceReport,
    ColumnSign,
    FramedSeed,
    GreenSequenceReport,
    GreenVerificationError,
    admissible_source_numbering,
    apply_sequence_framed,
    brute_force_green_search,
    check_sign_coherence,
    column_sign,
    extend,
    format_seed,
    green_directions,
    mutate_framed,
    parse_seed,
    sign_of_column,
    source_mgs,
)
from .unfolding import (
    CommutationReport,
    GammaReport,
    GammaViolationError,
    InteriorExhaustedError,
    LabeledQuiver,
    build_piece,
    build_truncation,
    check_gamma_conditions,
    folding,
    folding_column,
    orbit_mutate,
    orbit_sources,
    to_dot,
    verify_unfolding_commutation,
)

__all__ = [
    "ClassificationReport",
    "CoherenceReport",
    "ColumnSign",
    "CommutationReport",
    "ExchangeMatrix",
    "FramedSeed",
    "GammaReport",
    "GammaViolationError",
    "GreenSequenceReport",
    "GreenVerificationError",
    "InteriorExhaustedError",
    "LabeledQuiver",
    "MatrixFormatError",
    "MutabilityReport",
    "admissible_source_numbering",
    "apply_sequence",
    "apply_sequence_framed",
    "brute_force_green_search",
    "build_piece",
    "build_truncation",
    "check_sign_coherence",
    "check_total_mutability",
    "check_gamma_conditions",
    "classify",
    "column_sign",
    "delta_edges",
    "extend",
    "find_symmetrizer",
    "folding",
    "folding_column",
    "format_matrix",
    "format_seed",
    "green_directions",
    "is_acyclic",
    "is_sign_skew_symmetric",
    "is_skew_symmetric",
    "mutate",
    "mutate_framed",
    "orbit_mutate",
    "orbit_sources",
    "parse_matrix",
    "parse_seed",
    "sign_of_column",
    "source_mgs",
    "to_dot",
    "verify_unfolding_commutation",
]

__version__ = "0.1.0"

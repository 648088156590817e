"""Exact-arithmetic toolkit for nested-subspace (flag) codes over GF(q).

Constructs maximum-distance flag codes from spreads, verifies their
structure exhaustively, simulates a multishot erasure channel, and
decodes shot by shot.  Hot elimination kernels run in a compiled
extension when available; :func:`kernel_backend` reports which one is
active.
"""

from flagcodes._backend import backend_name as kernel_backend
from flagcodes.channel import ChannelConfig, TransmissionTrace, inject, run_trials, transmit
from flagcodes.codes import (
    FlagCode,
    check_spread_projection_dimension,
    cyclic_pair_matrices,
    divisor_type_code,
    full_flag_code_from_spread,
    maximality_oracle,
    puncture,
    verify_projected_structure,
)
from flagcodes.decoder import DecodeOutcome, DecoderIndex, build_index, correctable, decode
from flagcodes.flags import (
    Flag,
    FlagType,
    StutteringFlag,
    flag_distance,
    is_disjoint,
    is_optimum_distance,
    max_flag_distance_bound,
    min_flag_distance,
    projected_code,
)
from flagcodes.geometry import (
    Subspace,
    contains,
    enumerate_full_flags,
    enumerate_grassmannian,
    gaussian_binomial,
    intersection_dim,
    subspace_distance,
    sum_dim,
)
from flagcodes.gf import FieldElement, PrimePowerField, companion_matrix, find_primitive_polynomial
from flagcodes.linalg import MatrixFq, matmul, rank_of_stack, row_prefix, rref, stack
from flagcodes.spreads import Spread, build_spread, partial_spread_bound, verify_spread

__version__ = "0.1.0"

__all__ = [
    "ChannelConfig",
    "DecodeOutcome",
    "DecoderIndex",
    "FieldElement",
    "Flag",
    "FlagCode",
    "FlagType",
    "MatrixFq",
    "PrimePowerField",
    "Spread",
    "StutteringFlag",
    "Subspace",
    "TransmissionTrace",
    "build_index",
    "build_spread",
    "check_spread_projection_dimension",
    "companion_matrix",
    "contains",
    "correctable",
    "cyclic_pair_matrices",
    "decode",
    "divisor_type_code",
    "enumerate_full_flags",
    "enumerate_grassmannian",
    "find_primitive_polynomial",
    "flag_distance",
    "full_flag_code_from_spread",
    "gaussian_binomial",
    "inject",
    "intersection_dim",
    "is_disjoint",
    "is_optimum_distance",
    "kernel_backend",
    "matmul",
    "max_flag_distance_bound",
    "maximality_oracle",
    "min_flag_distance",
    "partial_spread_bound",
    "projected_code",
    "puncture",
    "rank_of_stack",
    "row_prefix",
    "rref",
    "run_trials",
    "stack",
    "subspace_distance",
    "sum_dim",
    "transmit",
    "verify_projected_structure",
    "verify_spread",
]

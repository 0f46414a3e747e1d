"""Exact Horadam sequences, Horadam quaternions and their 2x2 matrix method."""

from .algebra import Quaternion, Rational, as_rational, embed, format_rational, parse_rational
from .errors import (
    HoradamError,
    IndexConstraintError,
    MismatchedPQ,
    NegativeIndexWithZeroQ,
    NegativePowerUnsupported,
    UnknownIdentity,
    UnknownMatrix,
)
from .matrices import Mat2, build_named, det_row1, det_row2, mat_mul, mat_pow
from .qsequences import K, Q, U, V, W, W_range
from .sequences import HoradamParams, SequenceKind, params_for, term_fast, term_naive, u_term, v_term

__version__ = "0.1.0"

__all__ = [
    "HoradamError",
    "HoradamParams",
    "IndexConstraintError",
    "K",
    "Mat2",
    "MismatchedPQ",
    "NegativeIndexWithZeroQ",
    "NegativePowerUnsupported",
    "Q",
    "Quaternion",
    "Rational",
    "SequenceKind",
    "U",
    "UnknownIdentity",
    "UnknownMatrix",
    "V",
    "W",
    "W_range",
    "as_rational",
    "build_named",
    "det_row1",
    "det_row2",
    "embed",
    "format_rational",
    "mat_mul",
    "mat_pow",
    "params_for",
    "parse_rational",
    "term_fast",
    "term_naive",
    "u_term",
    "v_term",
]

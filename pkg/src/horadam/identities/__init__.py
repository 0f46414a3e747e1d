"""Executable registry of quaternion sequence identities and the grid verifier."""

from .brackets import commutator0, delta
from .checker import (
    INDEX_VARS,
    GridResult,
    GridSpec,
    IdentityPoint,
    IdentityReport,
    IdStats,
    adjudicate,
    check,
    check_grid,
)
from .registry import REGISTRY, Identity, all_ids, derivation_backed_ids, disputed_pairs, get

__all__ = [
    "INDEX_VARS",
    "GridResult",
    "GridSpec",
    "IdStats",
    "Identity",
    "IdentityPoint",
    "IdentityReport",
    "REGISTRY",
    "adjudicate",
    "all_ids",
    "check",
    "check_grid",
    "commutator0",
    "delta",
    "derivation_backed_ids",
    "disputed_pairs",
    "get",
]

"""Exact monodromy data (Stokes and central connection matrices) of semisimple
Frobenius manifolds, with worked datasets for A3 and the Grassmannian G(2,4)."""

from .linalg import SymMatrix, ZLMatrix
from .monodromy import (
    BraidWord,
    MonodromyData,
    apply_braid,
    apply_gauge,
    apply_permutation,
    apply_shift,
    apply_signs,
    center_braid,
    check_constraints,
)
from .report import Check, Report
from .symring import DEFAULT_TABLE, V_TABLE, GaussianRational, SymbolTable, SymError, SymExpr, parse

__version__ = "0.1.0"

__all__ = [
    "BraidWord",
    "Check",
    "DEFAULT_TABLE",
    "GaussianRational",
    "MonodromyData",
    "Report",
    "SymError",
    "SymExpr",
    "SymMatrix",
    "SymbolTable",
    "V_TABLE",
    "ZLMatrix",
    "apply_braid",
    "apply_gauge",
    "apply_permutation",
    "apply_shift",
    "apply_signs",
    "center_braid",
    "check_constraints",
    "parse",
]

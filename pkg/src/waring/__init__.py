"""Concomitants, Waring rank and verified Waring decompositions of ternary cubics."""

from .classify import DEFAULT_POLICY, Label, RankClassification, ZeroTestPolicy, cubic_rank, lower_bound
from .concom import Concomitants, concomitants, identity_suite
from .decompose import DecompositionError, WaringDecomposition, decompose, verify
from .poly import CubicForm, LinearForm, Poly, QuadraticForm

__version__ = "0.1.0"

__all__ = [
    "Concomitants",
    "CubicForm",
    "DEFAULT_POLICY",
    "DecompositionError",
    "Label",
    "LinearForm",
    "Poly",
    "QuadraticForm",
    "RankClassification",
    "WaringDecomposition",
    "ZeroTestPolicy",
    "concomitants",
    "cubic_rank",
    "decompose",
    "identity_suite",
    "lower_bound",
    "verify",
]

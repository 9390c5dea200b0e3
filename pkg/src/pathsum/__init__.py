"""Symbolic sum-over-paths terms: rewriting, equivalence, exact semantics and ZH translation."""

from .cyclotomic import CycInt, CycMatrix
from .discard import cpm, f_double, g_fold
from .errors import SopError
from .poly import BoolPoly, PhasePoly, hat_scaled
from .rewrite import Verdict, equiv, is_terminal, measure_tuple, reduce, try_rule
from .semantics import interp, interp_ground, matrix_equal, matrix_is_zero
from .term import (
    Scalar,
    SopTerm,
    alpha_canonicalize,
    compose,
    dagger,
    generator,
    graph_state,
    is_clifford,
    tensor,
)

__version__ = "0.1.0"

__all__ = [
    "BoolPoly",
    "CycInt",
    "CycMatrix",
    "PhasePoly",
    "Scalar",
    "SopError",
    "SopTerm",
    "Verdict",
    "alpha_canonicalize",
    "compose",
    "cpm",
    "dagger",
    "equiv",
    "f_double",
    "g_fold",
    "generator",
    "graph_state",
    "hat_scaled",
    "interp",
    "interp_ground",
    "is_clifford",
    "is_terminal",
    "matrix_equal",
    "matrix_is_zero",
    "measure_tuple",
    "reduce",
    "tensor",
    "try_rule",
]

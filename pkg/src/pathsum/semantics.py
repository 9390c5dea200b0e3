"""Exact dense interpretation of terms.

``interp`` enumerates every assignment of the summation variables and adds
``zeta**(2**L * P(y))`` into the entry ``(O(y), I(y))``. Wires are read
big-endian: the first listed wire is the most significant bit of the index.
"""

from __future__ import annotations

import numpy as np

from . import kernels
from .cyclotomic import CycMatrix, format_exact_scalar
from .discard import cpm
from .errors import DimensionMismatch, NonDyadicPhase, NotPure, TooManyVariables
from .term import SopTerm

DEFAULT_VAR_CAP = 20
L_MAX = 16


def _flatten(polys) -> tuple[np.ndarray, np.ndarray]:
    masks: list[int] = []
    offsets = [0]
    for p in polys:
        masks.extend(p.sorted_monomials())
        offsets.append(len(masks))
    return np.asarray(masks, dtype=np.int64), np.asarray(offsets, dtype=np.int64)


def interp(t: SopTerm, *, var_cap: int = DEFAULT_VAR_CAP, l_max: int = L_MAX) -> CycMatrix:
    if t.discard:
        raise NotPure("interp needs a pure term; use interp_ground for discards")
    k = len(t.vars)
    if k > var_cap:
        raise TooManyVariables(k, var_cap)
    level = max(3, t.phase.max_log_den())
    if level > l_max:
        raise NonDyadicPhase(f"phase denominator 2^{level} exceeds the supported 2^{l_max}")
    r = t.renumbered(0)
    full = 1 << level
    mons = np.asarray(list(r.phase.terms), dtype=np.int64)
    weights = np.asarray([int(c * full) for c in r.phase.terms.values()], dtype=np.int64)
    om, oo = _flatten(r.out)
    im, io = _flatten(r.inp)
    data = kernels.accumulate(k, mons, weights, om, oo, im, io, level)
    if t.scalar.odd != 1:
        data = data * t.scalar.odd
    return CycMatrix(np.ascontiguousarray(data), level, t.scalar.half_exp)


def interp_ground(t: SopTerm, *, var_cap: int = DEFAULT_VAR_CAP, l_max: int = L_MAX) -> CycMatrix:
    """Interpretation of a term with discards, through its doubled pure term."""
    return interp(cpm(t), var_cap=var_cap, l_max=l_max)


def matrix_equal(a: CycMatrix, b: CycMatrix) -> bool:
    if a.shape != b.shape:
        raise DimensionMismatch(f"shapes {a.shape} and {b.shape} differ")
    return a == b


def matrix_is_zero(a: CycMatrix) -> bool:
    return a.is_zero()


class ExactScalar:
    """A complex number given exactly as a 1x1 matrix."""

    __slots__ = ("matrix",)

    def __init__(self, matrix: CycMatrix) -> None:
        if matrix.shape != (1, 1):
            raise DimensionMismatch(f"expected a 1x1 matrix, got {matrix.shape}")
        self.matrix = matrix

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def __complex__(self) -> complex:
        return complex(self.matrix.to_complex()[0, 0])

    def __eq__(self, other: object) -> bool:
        if isinstance(other, ExactScalar):
            return self.matrix == other.matrix
        return NotImplemented

    __hash__ = None  # type: ignore[assignment]

    def __str__(self) -> str:
        return format_exact_scalar(self.matrix)

    def __repr__(self) -> str:
        return f"ExactScalar({self})"


def scalar_value(t: SopTerm, **kwargs) -> ExactScalar:
    """Exact value of a 0 -> 0 term (ground terms go through their doubling)."""
    m = interp_ground(t, **kwargs) if t.discard else interp(t, **kwargs)
    return ExactScalar(m)


__all__ = [
    "DEFAULT_VAR_CAP",
    "L_MAX",
    "ExactScalar",
    "interp",
    "interp_ground",
    "matrix_equal",
    "matrix_is_zero",
    "scalar_value",
]

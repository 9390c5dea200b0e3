"""Sum-over-paths terms, generators and the categorical operations on them.

A term ``f : n -> m`` denotes the linear map

    s * sum_y exp(2*pi*i*P(y)) |O(y)> ! D(y) <I(y)|

where ``y`` ranges over boolean assignments of the term's variables. ``D`` is the
set of discarded polynomials; a term with empty ``D`` is pure.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterable, Mapping, Sequence

from .errors import ArityMismatch, MalformedInput, NotPure, SopError
from .poly import (
    HALF,
    ONE,
    ZERO,
    BoolPoly,
    PhasePoly,
    bool_sort_key,
    dyadic,
    dyadic_parts,
    mono,
    mono_vars,
)


@dataclass(frozen=True, slots=True)
class Scalar:
    """The positive real ``odd * sqrt(2)**half_exp``."""

    odd: int = 1
    half_exp: int = 0

    def __post_init__(self) -> None:
        if self.odd < 1 or self.odd % 2 == 0:
            raise ValueError(f"scalar odd part must be a positive odd integer, got {self.odd}")

    def __mul__(self, other: Scalar) -> Scalar:
        return Scalar(self.odd * other.odd, self.half_exp + other.half_exp)

    def sqrt2(self, k: int) -> Scalar:
        return Scalar(self.odd, self.half_exp + k)

    def squared(self) -> Scalar:
        return Scalar(self.odd * self.odd, 2 * self.half_exp)

    def sqrt(self) -> Scalar | None:
        r = isqrt(self.odd)
        if r * r != self.odd or self.half_exp % 2:
            return None
        return Scalar(r, self.half_exp // 2)

    def __float__(self) -> float:
        return self.odd * 2.0 ** (self.half_exp / 2)

    @classmethod
    def from_rational(cls, r: object) -> tuple[Scalar, bool] | None:
        """Split a nonzero rational ``±odd * 2**k`` into (scalar, negative)."""
        f = Fraction(r)  # type: ignore[arg-type]
        if f == 0:
            return None
        neg = f < 0
        f = abs(f)
        num, den = f.numerator, f.denominator
        if den & (den - 1):
            return None
        k = -(den.bit_length() - 1)
        while num % 2 == 0:
            num //= 2
            k += 1
        return cls(num, 2 * k), neg

    def __str__(self) -> str:
        if self.half_exp == 0:
            return str(self.odd)
        if self.half_exp < 0:
            return f"{self.odd}/sqrt(2)^{-self.half_exp}"
        return f"{self.odd}*sqrt(2)^{self.half_exp}"


ONE_SCALAR = Scalar()


class SopTerm:
    """An immutable sum-over-paths term with an optional discard set.

    ``vars`` lists every summation variable (VarIds are small non-negative
    integers). Polynomials refer to variables through bitmask monomials.
    Constant-zero polynomials are removed from the discard set on
    construction: discarding ``0`` is the identity.
    """

    __slots__ = ("scalar", "vars", "phase", "out", "inp", "discard")

    def __init__(
        self,
        scalar: Scalar,
        variables: Iterable[int],
        phase: PhasePoly,
        out: Iterable[BoolPoly],
        inp: Iterable[BoolPoly],
        discard: Iterable[BoolPoly] = (),
    ) -> None:
        self.scalar = scalar
        self.vars: tuple[int, ...] = tuple(variables)
        self.phase = phase
        self.out: tuple[BoolPoly, ...] = tuple(out)
        self.inp: tuple[BoolPoly, ...] = tuple(inp)
        self.discard: frozenset[BoolPoly] = frozenset(d for d in discard if d.mons)

    # basic queries
    @property
    def n_in(self) -> int:
        return len(self.inp)

    @property
    def n_out(self) -> int:
        return len(self.out)

    @property
    def is_pure(self) -> bool:
        return not self.discard

    @property
    def vars_mask(self) -> int:
        return mono(*self.vars)

    def occurring_mask(self) -> int:
        """Variables that occur in P, O, I or D."""
        acc = self.phase.vars_mask
        for p in self.out + self.inp:
            acc |= p.vars_mask
        for d in self.discard:
            acc |= d.vars_mask
        return acc

    def boundary_mask(self) -> int:
        acc = 0
        for p in self.out + self.inp:
            acc |= p.vars_mask
        for d in self.discard:
            acc |= d.vars_mask
        return acc

    def internal_vars(self) -> list[int]:
        b = self.boundary_mask()
        return sorted(v for v in self.vars if not (b >> v) & 1)

    def fresh_var(self) -> int:
        return max(self.vars, default=-1) + 1

    def sorted_discard(self) -> list[BoolPoly]:
        return sorted(self.discard, key=bool_sort_key)

    def validate(self) -> SopTerm:
        if len(set(self.vars)) != len(self.vars):
            raise MalformedInput("duplicate variables in term")
        if any(v < 0 for v in self.vars):
            raise MalformedInput("variable ids must be non-negative")
        extra = self.occurring_mask() & ~self.vars_mask
        if extra:
            names = ", ".join(f"y{v}" for v in mono_vars(extra))
            raise MalformedInput(f"variables {names} occur but are not declared")
        return self

    # structural maps
    def rename(self, mapping: Mapping[int, int]) -> SopTerm:
        return SopTerm(
            self.scalar,
            [mapping[v] for v in self.vars],
            self.phase.rename(mapping),
            [p.rename(mapping) for p in self.out],
            [p.rename(mapping) for p in self.inp],
            [d.rename(mapping) for d in self.discard],
        )

    def shifted(self, offset: int) -> SopTerm:
        return self.rename({v: v + offset for v in self.vars})

    def renumbered(self, start: int = 0) -> SopTerm:
        """Rename variables to ``start, start+1, ...`` keeping their order."""
        return self.rename({v: start + i for i, v in enumerate(self.vars)})

    def with_(self, **changes: object) -> SopTerm:
        fields = {
            "scalar": self.scalar,
            "variables": self.vars,
            "phase": self.phase,
            "out": self.out,
            "inp": self.inp,
            "discard": self.discard,
        }
        fields.update(changes)
        return SopTerm(**fields)  # type: ignore[arg-type]

    # protocol
    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, SopTerm)
            and self.scalar == other.scalar
            and self.vars == other.vars
            and self.phase == other.phase
            and self.out == other.out
            and self.inp == other.inp
            and self.discard == other.discard
        )

    def __hash__(self) -> int:
        return hash((self.scalar, self.vars, self.phase, self.out, self.inp, self.discard))

    def __repr__(self) -> str:
        return f"SopTerm<{self.n_in}->{self.n_out}: {self}>"

    def __str__(self) -> str:
        return format_term(self)

    # serialization
    def to_json(self) -> dict:
        return term_to_json(self)

    def dumps(self, indent: int | None = None) -> str:
        return json.dumps(term_to_json(self), indent=indent, separators=None if indent else (",", ":"))


def format_term(t: SopTerm) -> str:
    parts = []
    if t.scalar != ONE_SCALAR:
        parts.append(f"{t.scalar} ·")
    if t.vars:
        parts.append("Σ_{" + ",".join(f"y{v}" for v in t.vars) + "}")
    if t.phase:
        parts.append(f"e^(2iπ({t.phase}))")
    parts.append("|" + ",".join(str(p) for p in t.out) + "⟩")
    if t.discard:
        parts.append("!{" + ",".join(str(d) for d in t.sorted_discard()) + "}")
    parts.append("⟨" + ",".join(str(p) for p in t.inp) + "|")
    return " ".join(parts)


# -- JSON ---------------------------------------------------------------------------------


def _poly_json(p: BoolPoly) -> list[list[int]]:
    return [list(mono_vars(m)) for m in p.sorted_monomials()]


def term_to_json(t: SopTerm) -> dict:
    phase = []
    for m, c in t.phase.sorted_terms():
        num, ld = dyadic_parts(c)
        phase.append({"mon": list(mono_vars(m)), "num": num, "log_den": ld})
    return {
        "n_in": t.n_in,
        "n_out": t.n_out,
        "scalar": {"odd": t.scalar.odd, "half_exp": t.scalar.half_exp},
        "vars": list(t.vars),
        "phase": phase,
        "out": [_poly_json(p) for p in t.out],
        "in": [_poly_json(p) for p in t.inp],
        "discard": [_poly_json(d) for d in t.sorted_discard()],
    }


def _poly_from_json(obj: object) -> BoolPoly:
    if not isinstance(obj, list):
        raise MalformedInput(f"boolean polynomial must be a list of monomials, got {obj!r}")
    mons = []
    for m in obj:
        if not isinstance(m, list) or not all(isinstance(v, int) and v >= 0 for v in m):
            raise MalformedInput(f"monomial must be a list of variable ids, got {m!r}")
        mons.append(mono(*m))
    return BoolPoly.from_monomials(mons)


def term_from_json(obj: object) -> SopTerm:
    if not isinstance(obj, dict):
        raise MalformedInput("term JSON must be an object")
    try:
        sc = obj.get("scalar", {"odd": 1, "half_exp": 0})
        scalar = Scalar(int(sc["odd"]), int(sc["half_exp"]))
        phase = PhasePoly.from_terms(
            (mono(*e["mon"]), dyadic(int(e["num"]), int(e["log_den"]))) for e in obj.get("phase", [])
        )
        out = [_poly_from_json(p) for p in obj["out"]]
        inp = [_poly_from_json(p) for p in obj["in"]]
        disc = [_poly_from_json(p) for p in obj.get("discard", [])]
        variables = [int(v) for v in obj["vars"]]
    except SopError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedInput(f"malformed term JSON: {exc}") from exc
    t = SopTerm(scalar, variables, phase, out, inp, disc)
    if "n_in" in obj and obj["n_in"] != t.n_in or "n_out" in obj and obj["n_out"] != t.n_out:
        raise MalformedInput("declared arity does not match the signatures")
    return t.validate()


def loads(text: str) -> SopTerm:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"invalid JSON: {exc}") from exc
    return term_from_json(obj)


# -- generators -----------------------------------------------------------------------------


def _v(i: int) -> BoolPoly:
    return BoolPoly.var(i)


def identity(n: int = 1) -> SopTerm:
    ys = [_v(i) for i in range(n)]
    return SopTerm(ONE_SCALAR, range(n), PhasePoly(), ys, ys)


def swap(n: int = 1, m: int = 1) -> SopTerm:
    a = [_v(i) for i in range(n)]
    b = [_v(n + i) for i in range(m)]
    return SopTerm(ONE_SCALAR, range(n + m), PhasePoly(), b + a, a + b)


def eta(n: int = 1) -> SopTerm:
    ys = [_v(i) for i in range(n)]
    return SopTerm(ONE_SCALAR, range(n), PhasePoly(), ys + ys, [])


def eps(n: int = 1) -> SopTerm:
    ys = [_v(i) for i in range(n)]
    return SopTerm(ONE_SCALAR, range(n), PhasePoly(), [], ys + ys)


def hadamard() -> SopTerm:
    return SopTerm(Scalar(1, -1), (0, 1), PhasePoly({mono(0, 1): HALF}), [_v(1)], [_v(0)])


def phase_gate(c: object) -> SopTerm:
    """``diag(1, exp(2*pi*i*c))``."""
    return SopTerm(ONE_SCALAR, (0,), PhasePoly.monomial(mono(0), c), [_v(0)], [_v(0)])


def rz(k: int, d: int) -> SopTerm:
    return phase_gate(dyadic(k, d))


def pauli_x() -> SopTerm:
    return SopTerm(ONE_SCALAR, (0,), PhasePoly(), [ONE ^ _v(0)], [_v(0)])


def cz() -> SopTerm:
    return SopTerm(ONE_SCALAR, (0, 1), PhasePoly({mono(0, 1): HALF}), [_v(0), _v(1)], [_v(0), _v(1)])


def cnot() -> SopTerm:
    return SopTerm(ONE_SCALAR, (0, 1), PhasePoly(), [_v(0), _v(0) ^ _v(1)], [_v(0), _v(1)])


def ket(bits: Sequence[int] | str) -> SopTerm:
    return SopTerm(ONE_SCALAR, (), PhasePoly(), [BoolPoly.const(int(b)) for b in bits], [])


def bra(bits: Sequence[int] | str) -> SopTerm:
    return SopTerm(ONE_SCALAR, (), PhasePoly(), [], [BoolPoly.const(int(b)) for b in bits])


def discard(n: int = 1) -> SopTerm:
    ys = [_v(i) for i in range(n)]
    return SopTerm(ONE_SCALAR, range(n), PhasePoly(), [], ys, ys)


def measure() -> SopTerm:
    return SopTerm(ONE_SCALAR, (0,), PhasePoly(), [_v(0)], [_v(0)], [_v(0)])


def zero_form(n_out: int, n_in: int) -> SopTerm:
    """The normal form of the zero map ``n_in -> n_out``."""
    return SopTerm(ONE_SCALAR, (0,), PhasePoly({mono(0): HALF}), [ZERO] * n_out, [ZERO] * n_in)


def scalar_term(scalar: Scalar = ONE_SCALAR, phase: object = 0) -> SopTerm:
    return SopTerm(scalar, (), PhasePoly.constant(phase), [], [])


_FIXED = {
    "h": hadamard,
    "x": pauli_x,
    "z": lambda: phase_gate(HALF),
    "s": lambda: phase_gate(Fraction(1, 4)),
    "sdg": lambda: phase_gate(Fraction(3, 4)),
    "t": lambda: phase_gate(Fraction(1, 8)),
    "tdg": lambda: phase_gate(Fraction(7, 8)),
    "cz": cz,
    "cnot": cnot,
    "cx": cnot,
    "measure": measure,
}


def generator(name: str, *params: object) -> SopTerm:
    """Build a named generator, e.g. ``generator("rz", 1, 3)`` or ``generator("id", 2)``."""
    key = name.lower()
    if key in _FIXED:
        if params:
            raise ValueError(f"generator {name} takes no parameters")
        return _FIXED[key]()
    if key == "rz":
        k, d = params
        return rz(int(k), int(d))  # type: ignore[arg-type]
    if key in ("id", "identity"):
        return identity(int(params[0]) if params else 1)  # type: ignore[arg-type]
    if key == "swap":
        n, m = (list(params) + [1, 1])[:2]
        return swap(int(n), int(m))  # type: ignore[arg-type]
    if key == "eta":
        return eta(int(params[0]) if params else 1)  # type: ignore[arg-type]
    if key == "eps":
        return eps(int(params[0]) if params else 1)  # type: ignore[arg-type]
    if key == "ket":
        return ket(params[0])  # type: ignore[arg-type]
    if key == "bra":
        return bra(params[0])  # type: ignore[arg-type]
    if key == "discard":
        return discard(int(params[0]) if params else 1)  # type: ignore[arg-type]
    raise ValueError(f"unknown generator {name!r}")


def graph_state(n: int, edges: Iterable[tuple[int, int]]) -> SopTerm:
    """``sum_y exp(2*pi*i * sum_{(i,j) in E} y_i y_j / 2) |y>``."""
    terms = {}
    for i, j in edges:
        if i == j or not (0 <= i < n and 0 <= j < n):
            raise ValueError(f"invalid edge ({i}, {j}) for {n} vertices")
        m = mono(i, j)
        terms[m] = (terms.get(m, Fraction(0)) + HALF) % 1
    return SopTerm(ONE_SCALAR, range(n), PhasePoly({m: c for m, c in terms.items() if c}), [_v(i) for i in range(n)], [])


# -- categorical operations --------------------------------------------------------------------


def compose(f: SopTerm, g: SopTerm) -> SopTerm:
    """``f ∘ g``: run g first. One fresh mediator variable per connecting wire."""
    if f.n_in != g.n_out:
        raise ArityMismatch(f"cannot compose {f.n_in}-input term after {g.n_out}-output term")
    kg, kf = len(g.vars), len(f.vars)
    g2 = g.renumbered(0)
    f2 = f.renumbered(kg)
    n = f.n_in
    acc = dict(g2.phase.terms)
    for m, c in f2.phase.terms.items():
        acc[m] = acc.get(m, Fraction(0)) + c
    for i in range(n):
        y = 1 << (kg + kf + i)
        for poly in (g2.out[i], f2.inp[i]):
            for m in poly.mons:
                k = m | y
                acc[k] = acc.get(k, Fraction(0)) + HALF
    phase = PhasePoly({m: c % 1 for m, c in acc.items() if c % 1})
    scalar = (f.scalar * g.scalar).sqrt2(-2 * n)
    return SopTerm(scalar, range(kg + kf + n), phase, f2.out, g2.inp, f2.discard | g2.discard)


def tensor(f: SopTerm, g: SopTerm) -> SopTerm:
    kf = len(f.vars)
    f2 = f.renumbered(0)
    g2 = g.renumbered(kf)
    return SopTerm(
        f.scalar * g.scalar,
        range(kf + len(g.vars)),
        f2.phase + g2.phase,
        f2.out + g2.out,
        f2.inp + g2.inp,
        f2.discard | g2.discard,
    )


def tensor_all(terms: Iterable[SopTerm]) -> SopTerm:
    acc = identity(0)
    for t in terms:
        acc = tensor(acc, t)
    return acc


def compose_all(terms: Sequence[SopTerm]) -> SopTerm:
    """``terms[0] ∘ terms[1] ∘ ...``"""
    acc = terms[-1]
    for t in reversed(terms[:-1]):
        acc = compose(t, acc)
    return acc


def _require_pure(t: SopTerm, op: str) -> None:
    if t.discard:
        raise NotPure(f"{op} is only defined on pure terms")


def dagger(t: SopTerm) -> SopTerm:
    _require_pure(t, "dagger")
    return SopTerm(t.scalar, t.vars, -t.phase, t.inp, t.out)


def conjugate(t: SopTerm) -> SopTerm:
    _require_pure(t, "conjugate")
    return SopTerm(t.scalar, t.vars, -t.phase, t.out, t.inp)


def transpose(t: SopTerm) -> SopTerm:
    _require_pure(t, "transpose")
    return dagger(conjugate(t))


def permute_outputs(t: SopTerm, order: Sequence[int]) -> SopTerm:
    """Reorder output wires so that new wire ``i`` is old wire ``order[i]``."""
    return t.with_(out=[t.out[i] for i in order])


def permute_inputs(t: SopTerm, order: Sequence[int]) -> SopTerm:
    return t.with_(inp=[t.inp[i] for i in order])


# -- fragments and canonical forms -------------------------------------------------------------


def is_clifford(t: SopTerm) -> bool:
    if t.scalar.odd != 1:
        return False
    for m, c in t.phase.terms.items():
        deg = m.bit_count()
        if deg >= 3:
            return False
        if (c * (8, 4, 2)[deg]).denominator != 1:
            return False
    return all(p.is_affine() for p in t.out + t.inp) and all(d.is_affine() for d in t.discard)


def _canonical_order(t: SopTerm) -> list[int]:
    order: list[int] = []
    seen: set[int] = set()

    def visit(m: int) -> None:
        for v in mono_vars(m):
            if v not in seen:
                seen.add(v)
                order.append(v)

    for p in t.out + t.inp:
        for m in p.sorted_monomials():
            visit(m)
    for d in t.sorted_discard():
        for m in d.sorted_monomials():
            visit(m)
    for m in t.phase.sorted_monomials():
        visit(m)
    order.extend(v for v in t.vars if v not in seen)
    return order


def alpha_canonicalize(t: SopTerm) -> SopTerm:
    """Rename variables to 0, 1, ... by first occurrence (O, then I, D, P).

    The scan order inside a polynomial depends on the incoming names, so the
    renaming is iterated until it is the identity.
    """
    for _ in range(64):
        order = _canonical_order(t)
        if order == list(range(len(order))) and t.vars == tuple(order):
            return t
        mapping = {v: i for i, v in enumerate(order)}
        renamed = t.rename(mapping)
        t = renamed.with_(variables=range(len(order)))
    return t


def canonical_json(t: SopTerm) -> str:
    return alpha_canonicalize(t).dumps()


def alpha_equal(a: SopTerm, b: SopTerm) -> bool:
    return canonical_json(a) == canonical_json(b)


def term_size(t: SopTerm) -> int:
    """Total number of monomials plus variables, a proxy for term size."""
    return (
        len(t.vars)
        + len(t.phase)
        + sum(len(p) for p in t.out)
        + sum(len(p) for p in t.inp)
        + sum(len(d) for d in t.discard)
    )


__all__ = [
    "ONE_SCALAR",
    "Scalar",
    "SopTerm",
    "alpha_canonicalize",
    "alpha_equal",
    "bra",
    "canonical_json",
    "cnot",
    "compose",
    "compose_all",
    "conjugate",
    "cz",
    "dagger",
    "discard",
    "eps",
    "eta",
    "format_term",
    "generator",
    "graph_state",
    "hadamard",
    "identity",
    "is_clifford",
    "ket",
    "loads",
    "measure",
    "pauli_x",
    "permute_inputs",
    "permute_outputs",
    "phase_gate",
    "rz",
    "scalar_term",
    "swap",
    "tensor",
    "tensor_all",
    "term_from_json",
    "term_to_json",
    "term_size",
    "transpose",
    "zero_form",
]

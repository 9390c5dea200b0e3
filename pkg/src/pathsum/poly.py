"""Polynomial algebra over boolean variables.

Two polynomial kinds are used throughout the package:

* :class:`BoolPoly` -- a multilinear polynomial over F2 (an XOR of AND-monomials).
* :class:`PhasePoly` -- a multilinear polynomial with dyadic rational coefficients
  taken modulo 1. Its value ``P(y)`` sets the amplitude ``exp(2*pi*i*P(y))``.

A monomial is an ``int`` bitmask: bit ``v`` set means variable ``y_v`` occurs.
The constant monomial ``1`` is the mask ``0``. Because a bitmask cannot hold a
repeated variable, the quotient ``X**2 = X`` is built in.

Canonical monomial order is shortlex on the sorted variable sequence, see
:func:`mono_key`.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, Iterator, Mapping

from .errors import MissingVariable, NonDyadicPhase, NonHalfCoefficient, PolyTooLarge

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)
THREE_QUARTERS = Fraction(3, 4)
EIGHTH = Fraction(1, 8)
ZERO_FRAC = Fraction(0)

DEFAULT_MONOMIAL_CAP = 10**6


# -- monomials -------------------------------------------------------------------


def mono(*variables: int) -> int:
    m = 0
    for v in variables:
        m |= 1 << v
    return m


def mono_vars(m: int) -> tuple[int, ...]:
    """Variables of a monomial in increasing order."""
    out = []
    while m:
        low = m & -m
        out.append(low.bit_length() - 1)
        m ^= low
    return tuple(out)


def mono_key(m: int) -> tuple[int, tuple[int, ...]]:
    vs = mono_vars(m)
    return (len(vs), vs)


def mono_str(m: int, name: str = "y") -> str:
    if m == 0:
        return "1"
    return "".join(f"{name}{v}" for v in mono_vars(m))


def is_single_var(m: int) -> bool:
    return m != 0 and m & (m - 1) == 0


def single_var(m: int) -> int:
    return m.bit_length() - 1


# -- dyadic coefficients -----------------------------------------------------------


def dyadic(num: int, log_den: int = 0) -> Fraction:
    """The value ``num / 2**log_den`` reduced into [0, 1)."""
    if log_den < 0:
        raise NonDyadicPhase(f"negative log_den {log_den}")
    return Fraction(num, 1 << log_den) % 1


def to_dyadic(x: object) -> Fraction:
    """Coerce ``x`` to a dyadic rational mod 1, rejecting other denominators."""
    try:
        f = Fraction(x) % 1  # type: ignore[arg-type]
    except (TypeError, ValueError) as exc:
        raise NonDyadicPhase(f"not a rational phase: {x!r}") from exc
    log_den(f)
    return f


def log_den(c: Fraction) -> int:
    d = c.denominator
    if d & (d - 1):
        raise NonDyadicPhase(f"denominator {d} of {c} is not a power of two")
    return d.bit_length() - 1


def dyadic_parts(c: Fraction) -> tuple[int, int]:
    """``(num, log_den)`` of a reduced dyadic in [0, 1)."""
    c = c % 1
    return c.numerator, log_den(c)


def frac_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


# -- boolean polynomials -------------------------------------------------------------


class BoolPoly:
    """Multilinear polynomial over F2, stored as a frozenset of monomial masks.

    The constructor trusts its argument to already be XOR-reduced (a set has no
    duplicates, so this always holds for a frozenset). Use
    :meth:`from_monomials` to fold an arbitrary iterable with cancellation.
    """

    __slots__ = ("mons", "_hash", "_vars")

    def __init__(self, mons: Iterable[int] = frozenset()) -> None:
        self.mons: frozenset[int] = mons if isinstance(mons, frozenset) else frozenset(mons)
        self._hash: int | None = None
        self._vars: int | None = None

    @classmethod
    def from_monomials(cls, mons: Iterable[int]) -> BoolPoly:
        acc: set[int] = set()
        for m in mons:
            if m in acc:
                acc.remove(m)
            else:
                acc.add(m)
        return cls(frozenset(acc))

    @classmethod
    def var(cls, v: int) -> BoolPoly:
        return cls(frozenset((1 << v,)))

    @classmethod
    def const(cls, bit: int) -> BoolPoly:
        return ONE if bit & 1 else ZERO

    # algebra
    def __xor__(self, other: BoolPoly) -> BoolPoly:
        return BoolPoly(self.mons ^ other.mons)

    __add__ = __xor__

    def __mul__(self, other: BoolPoly) -> BoolPoly:
        if not self.mons or not other.mons:
            return ZERO
        if len(other.mons) == 1:
            (b,) = other.mons
            return BoolPoly.from_monomials(a | b for a in self.mons)
        acc: set[int] = set()
        for a in self.mons:
            for b in other.mons:
                p = a | b
                if p in acc:
                    acc.remove(p)
                else:
                    acc.add(p)
        return BoolPoly(frozenset(acc))

    def subst(self, v: int, q: BoolPoly) -> BoolPoly:
        """Replace every occurrence of ``y_v`` by ``q``."""
        bit = 1 << v
        if not self.vars_mask & bit:
            return self
        keep = [m for m in self.mons if not m & bit]
        hit = BoolPoly.from_monomials(m ^ bit for m in self.mons if m & bit)
        return BoolPoly.from_monomials(keep) ^ (hit * q)

    def rename(self, mapping: Mapping[int, int]) -> BoolPoly:
        return BoolPoly.from_monomials(mono(*(mapping[v] for v in mono_vars(m))) for m in self.mons)

    # queries
    @property
    def vars_mask(self) -> int:
        if self._vars is None:
            acc = 0
            for m in self.mons:
                acc |= m
            self._vars = acc
        return self._vars

    def variables(self) -> tuple[int, ...]:
        return mono_vars(self.vars_mask)

    def is_zero(self) -> bool:
        return not self.mons

    def is_one(self) -> bool:
        return self.mons == ONE.mons

    def is_const(self) -> bool:
        return self.vars_mask == 0

    def is_single_var(self) -> bool:
        if len(self.mons) != 1:
            return False
        (m,) = self.mons
        return is_single_var(m)

    def is_affine(self) -> bool:
        return all(m & (m - 1) == 0 for m in self.mons)

    def degree(self) -> int:
        return max((m.bit_count() for m in self.mons), default=-1)

    def sorted_monomials(self) -> list[int]:
        return sorted(self.mons, key=mono_key)

    def sort_key(self) -> tuple:
        return tuple(mono_key(m) for m in self.sorted_monomials())

    def eval(self, assignment: Mapping[int, int]) -> int:
        for v in self.variables():
            if v not in assignment:
                raise MissingVariable(v)
        sigma = 0
        for v, b in assignment.items():
            if b & 1:
                sigma |= 1 << v
        return self.eval_mask(sigma)

    def eval_mask(self, sigma: int) -> int:
        bit = 0
        for m in self.mons:
            if m & sigma == m:
                bit ^= 1
        return bit

    # protocol
    def __eq__(self, other: object) -> bool:
        return isinstance(other, BoolPoly) and self.mons == other.mons

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.mons)
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.mons)

    def __iter__(self) -> Iterator[int]:
        return iter(self.sorted_monomials())

    def __len__(self) -> int:
        return len(self.mons)

    def __repr__(self) -> str:
        return f"BoolPoly({self})"

    def __str__(self) -> str:
        if not self.mons:
            return "0"
        return "⊕".join(mono_str(m) for m in self.sorted_monomials())


ZERO = BoolPoly(frozenset())
ONE = BoolPoly(frozenset((0,)))


def bool_sort_key(p: BoolPoly) -> tuple:
    return p.sort_key()


# -- phase polynomials ---------------------------------------------------------------


class PhasePoly:
    """Dyadic phase polynomial modulo 1.

    ``terms`` maps monomial masks to coefficients in (0, 1); zero coefficients are
    never stored. Instances are treated as immutable.
    """

    __slots__ = ("terms", "_vars")

    def __init__(self, terms: Mapping[int, Fraction] | None = None) -> None:
        self.terms: dict[int, Fraction] = dict(terms) if terms else {}
        self._vars: int | None = None

    @classmethod
    def from_terms(cls, items: Iterable[tuple[int, object]]) -> PhasePoly:
        acc: dict[int, Fraction] = {}
        for m, c in items:
            acc[m] = acc.get(m, ZERO_FRAC) + to_dyadic(c)
        return cls(_normalized(acc))

    @classmethod
    def constant(cls, c: object) -> PhasePoly:
        return cls.from_terms([(0, c)])

    @classmethod
    def monomial(cls, m: int, c: object) -> PhasePoly:
        return cls.from_terms([(m, c)])

    # algebra
    def __add__(self, other: PhasePoly) -> PhasePoly:
        if not other.terms:
            return self
        if not self.terms:
            return other
        acc = dict(self.terms)
        for m, c in other.terms.items():
            v = (acc.get(m, ZERO_FRAC) + c) % 1
            if v:
                acc[m] = v
            else:
                acc.pop(m, None)
        return PhasePoly(acc)

    def __neg__(self) -> PhasePoly:
        return PhasePoly({m: (-c) % 1 for m, c in self.terms.items()})

    def __sub__(self, other: PhasePoly) -> PhasePoly:
        return self + (-other)

    def coeff(self, m: int) -> Fraction:
        return self.terms.get(m, ZERO_FRAC)

    def cofactor(self, v: int) -> tuple[PhasePoly, PhasePoly]:
        """Split as ``P = y_v * C + R`` with ``y_v`` absent from both parts."""
        bit = 1 << v
        c: dict[int, Fraction] = {}
        r: dict[int, Fraction] = {}
        for m, k in self.terms.items():
            if m & bit:
                c[m ^ bit] = k
            else:
                r[m] = k
        return PhasePoly(c), PhasePoly(r)

    def subst(self, v: int, q: BoolPoly, cap: int = DEFAULT_MONOMIAL_CAP) -> PhasePoly:
        """Substitute ``y_v := q``, lifting ``q`` to the integers."""
        bit = 1 << v
        if not self.vars_mask & bit:
            return self
        acc: dict[int, Fraction] = {}
        hats: dict[Fraction, dict[int, Fraction]] = {}
        for m, c in self.terms.items():
            if not m & bit:
                acc[m] = acc.get(m, ZERO_FRAC) + c
                continue
            rest = m ^ bit
            h = hats.get(c)
            if h is None:
                h = hat_scaled(q, c, cap).terms
                hats[c] = h
            for hm, hc in h.items():
                k = hm | rest
                acc[k] = acc.get(k, ZERO_FRAC) + hc
            if len(acc) > cap:
                raise PolyTooLarge(f"substitution produced more than {cap} monomials")
        return PhasePoly(_normalized(acc))

    def rename(self, mapping: Mapping[int, int]) -> PhasePoly:
        acc: dict[int, Fraction] = {}
        for m, c in self.terms.items():
            k = mono(*(mapping[v] for v in mono_vars(m)))
            acc[k] = acc.get(k, ZERO_FRAC) + c
        return PhasePoly(_normalized(acc))

    def drop(self, m: int) -> PhasePoly:
        acc = dict(self.terms)
        del acc[m]
        return PhasePoly(acc)

    # queries
    @property
    def vars_mask(self) -> int:
        if self._vars is None:
            acc = 0
            for m in self.terms:
                acc |= m
            self._vars = acc
        return self._vars

    def variables(self) -> tuple[int, ...]:
        return mono_vars(self.vars_mask)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((m.bit_count() for m in self.terms), default=-1)

    def max_log_den(self) -> int:
        return max((log_den(c) for c in self.terms.values()), default=0)

    def sorted_monomials(self) -> list[int]:
        return sorted(self.terms, key=mono_key)

    def sorted_terms(self) -> list[tuple[int, Fraction]]:
        return [(m, self.terms[m]) for m in self.sorted_monomials()]

    def eval(self, assignment: Mapping[int, int]) -> Fraction:
        for v in self.variables():
            if v not in assignment:
                raise MissingVariable(v)
        sigma = 0
        for v, b in assignment.items():
            if b & 1:
                sigma |= 1 << v
        return self.eval_mask(sigma)

    def eval_mask(self, sigma: int) -> Fraction:
        total = ZERO_FRAC
        for m, c in self.terms.items():
            if m & sigma == m:
                total += c
        return total % 1

    # protocol
    def __eq__(self, other: object) -> bool:
        return isinstance(other, PhasePoly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        return f"PhasePoly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            if m == 0:
                parts.append(frac_str(c))
            elif c.numerator == 1:
                parts.append(f"{mono_str(m)}/{c.denominator}")
            else:
                parts.append(f"{c.numerator}{mono_str(m)}/{c.denominator}")
        return " + ".join(parts)


def _normalized(acc: dict[int, Fraction]) -> dict[int, Fraction]:
    out = {}
    for m, c in acc.items():
        c = c % 1
        if c:
            out[m] = c
    return out


def hat_scaled(q: BoolPoly, c: object, cap: int = DEFAULT_MONOMIAL_CAP) -> PhasePoly:
    """``c * lift(q) mod 1`` expanded by inclusion-exclusion.

    ``lift(q) = sum over nonempty S of (-2)**(|S|-1) * prod(S)`` where S ranges
    over subsets of the monomials of q. A subset of size k contributes with
    coefficient ``c * (-2)**(k-1)``, an integer once ``k > log_den(c)``, so only
    subsets up to that size are enumerated.
    """
    c = to_dyadic(c)
    if not c or not q.mons:
        return PhasePoly()
    if len(q.mons) == 1:
        (m,) = q.mons
        return PhasePoly({m: c})
    mons = q.sorted_monomials()
    kmax = min(log_den(c), len(mons))
    if sum(comb(len(mons), k) for k in range(1, kmax + 1)) > cap:
        raise PolyTooLarge(f"lift of a {len(mons)}-monomial polynomial exceeds cap {cap}")
    acc: dict[int, Fraction] = {}
    for k in range(1, kmax + 1):
        coef = (c * (-2) ** (k - 1)) % 1
        if k == 1:
            for m in mons:
                acc[m] = acc.get(m, ZERO_FRAC) + coef
            continue
        for subset in combinations(mons, k):
            p = 0
            for m in subset:
                p |= m
            acc[p] = acc.get(p, ZERO_FRAC) + coef
    return PhasePoly(_normalized(acc))


def hat_int(q: BoolPoly) -> dict[int, int]:
    """Untruncated integer lift of ``q`` (exponential in the monomial count)."""
    mons = q.sorted_monomials()
    acc: dict[int, int] = {}
    for k in range(1, len(mons) + 1):
        coef = (-2) ** (k - 1)
        for subset in combinations(mons, k):
            p = 0
            for m in subset:
                p |= m
            acc[p] = acc.get(p, 0) + coef
    return {m: c for m, c in acc.items() if c}


def cofactor_to_bool(c: PhasePoly) -> BoolPoly:
    """Read a cofactor whose coefficients are all 1/2 as a boolean polynomial."""
    for m, k in c.terms.items():
        if k != HALF:
            raise NonHalfCoefficient(f"coefficient {k} of {mono_str(m)} is not 1/2")
    return BoolPoly(frozenset(c.terms))


# Functional aliases matching the operation names used in the documentation.


def bp_xor(a: BoolPoly, b: BoolPoly) -> BoolPoly:
    return a ^ b


def bp_mul(a: BoolPoly, b: BoolPoly) -> BoolPoly:
    return a * b


def bp_subst(p: BoolPoly, v: int, q: BoolPoly) -> BoolPoly:
    return p.subst(v, q)


def bp_eval(p: BoolPoly, assignment: Mapping[int, int]) -> int:
    return p.eval(assignment)


def pp_subst(p: PhasePoly, v: int, q: BoolPoly, cap: int = DEFAULT_MONOMIAL_CAP) -> PhasePoly:
    return p.subst(v, q, cap)


def pp_eval(p: PhasePoly, assignment: Mapping[int, int]) -> Fraction:
    return p.eval(assignment)


def pp_cofactor(p: PhasePoly, v: int) -> tuple[PhasePoly, PhasePoly]:
    return p.cofactor(v)

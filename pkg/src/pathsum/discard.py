"""Doubling constructions for terms with discards.

``cpm`` turns a term with discards into a pure term on doubled wires whose
standard interpretation is the completely positive map of the original.
``f_double`` is the cheaper doubling valid on ground normal forms, and
``g_fold`` is its partial inverse.

Wire convention for doubled terms: the first half of the outputs (and inputs)
carries the unconjugated copy, the second half the conjugated one.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import NotFoldable, NotInDiscNormalForm
from .poly import HALF, ZERO, BoolPoly, PhasePoly, mono_vars
from .term import SopTerm


def cpm(t: SopTerm) -> SopTerm:
    k = len(t.vars)
    a = t.renumbered(0)
    b = t.renumbered(k)
    ds = t.sorted_discard()
    acc: dict[int, Fraction] = dict(a.phase.terms)
    for m, c in b.phase.terms.items():
        acc[m] = acc.get(m, Fraction(0)) - c
    for j, d in enumerate(ds):
        z = 1 << (2 * k + j)
        for copy in (d.rename({v: i for i, v in enumerate(t.vars)}), d.rename({v: k + i for i, v in enumerate(t.vars)})):
            for m in copy.mons:
                acc[m | z] = acc.get(m | z, Fraction(0)) + HALF
    phase = PhasePoly({m: c % 1 for m, c in acc.items() if c % 1})
    sq = t.scalar.squared()
    scalar = sq.sqrt2(-2 * len(ds))
    return SopTerm(scalar, range(2 * k + len(ds)), phase, a.out + b.out, a.inp + b.inp)


def discarded_vars(t: SopTerm) -> int:
    """Bitmask of discarded variables, requiring every discard to be a single variable."""
    mask = 0
    for d in t.discard:
        if not d.is_single_var():
            raise NotInDiscNormalForm(f"discarded polynomial {d} is not a single variable")
        mask |= d.vars_mask
    return mask


def f_double(t: SopTerm) -> SopTerm:
    dmask = discarded_vars(t)
    boundary = 0
    for p in t.out + t.inp:
        boundary |= p.vars_mask
    if dmask & ~boundary:
        raise NotInDiscNormalForm("a discarded variable does not occur in the signatures")
    first = {v: i for i, v in enumerate(t.vars)}
    nxt = len(t.vars)
    second = {}
    for v in t.vars:
        if (dmask >> v) & 1:
            second[v] = first[v]
        else:
            second[v] = nxt
            nxt += 1
    a = t.rename(first)
    b = t.rename(second)
    return SopTerm(
        t.scalar.squared(),
        range(nxt),
        a.phase - b.phase,
        a.out + b.out,
        a.inp + b.inp,
    )


def g_fold(t: SopTerm) -> SopTerm:
    """Fold a doubled pure term back to a ground term (raises NotFoldable)."""
    if t.discard:
        raise NotFoldable("input must be pure")
    if t.n_out % 2 or t.n_in % 2:
        raise NotFoldable("signatures cannot be split in equal halves")
    scalar = t.scalar.sqrt()
    if scalar is None:
        raise NotFoldable(f"scalar {t.scalar} is not a square")
    ho, hi = t.n_out // 2, t.n_in // 2
    first = list(t.out[:ho]) + list(t.inp[:hi])
    second = list(t.out[ho:]) + list(t.inp[hi:])
    diffs = [p ^ q for p, q in zip(first, second)]
    diff_mask = 0
    for d in diffs:
        diff_mask |= d.vars_mask
    first_mask = 0
    for p in first:
        first_mask |= p.vars_mask
    vmask = t.vars_mask
    yd = vmask & ~diff_mask
    y1 = first_mask & ~yd
    y2 = vmask & ~y1 & ~yd
    if y1.bit_count() != y2.bit_count():
        raise NotFoldable("the two copies have different variable counts")

    # first-occurrence scan: the first polynomial containing y_a pairs it with y_b'
    delta: dict[int, int] = {}
    for a in _first_occurrence_order(first, y1):
        pair = None
        for p, d in zip(first, diffs):
            if not (p.vars_mask >> a) & 1:
                continue
            pair = _pair_partner(d, a, y2)
            break
        if pair is None:
            for d in diffs:
                pair = _pair_partner(d, a, y2)
                if pair is not None:
                    break
        if pair is None or pair in delta:
            raise NotFoldable(f"no bijection partner for y{a}")
        delta[pair] = a
    if set(delta) != set(mono_vars(y2)):
        raise NotFoldable("the scan does not define a total bijection")

    def fold(p: BoolPoly) -> BoolPoly:
        for v in mono_vars(y1):
            p = p.subst(v, ZERO)
        return p.rename({v: delta.get(v, v) for v in p.variables()})

    for d in diffs:
        if d.rename({v: delta.get(v, v) for v in d.variables()}):
            raise NotFoldable("copies disagree after applying the bijection")

    phase = t.phase
    for v in mono_vars(y1):
        phase = phase.subst(v, ZERO)
    phase = -phase.rename({v: delta.get(v, v) for v in phase.variables()})
    kept = [v for v in t.vars if (y1 >> v) & 1 or (yd >> v) & 1]
    return SopTerm(
        scalar,
        kept,
        phase,
        [fold(p) for p in t.out[ho:]],
        [fold(p) for p in t.inp[hi:]],
        [BoolPoly.var(v) for v in mono_vars(yd)],
    )


def _first_occurrence_order(polys: list[BoolPoly], mask: int) -> list[int]:
    order: list[int] = []
    seen = 0
    for p in polys:
        for m in p.sorted_monomials():
            for v in mono_vars(m & mask & ~seen):
                order.append(v)
                seen |= 1 << v
    order.extend(mono_vars(mask & ~seen))
    return order


def _pair_partner(d: BoolPoly, a: int, y2: int) -> int | None:
    """If ``d`` is exactly ``y_a ⊕ y_b`` with ``y_b`` in the second copy, return b."""
    if len(d.mons) != 2 or (1 << a) not in d.mons:
        return None
    (other,) = d.mons - {1 << a}
    if other and other & (other - 1) == 0 and other & y2:
        return other.bit_length() - 1
    return None

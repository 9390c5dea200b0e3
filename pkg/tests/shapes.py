"""Structural predicates for reduced Clifford terms.

Each returns ``None`` when the term has the expected shape, otherwise a short
reason string (handy in assertion messages).
"""

from __future__ import annotations

from fractions import Fraction

from oracles import mask_vars


def _vars(polys) -> set[int]:
    out: set[int] = set()
    for p in polys:
        for m in p.mons:
            out.update(mask_vars(m))
    return out


def _affine(p) -> bool:
    return all(bin(m).count("1") <= 1 for m in p.mons)


def _single(p) -> int | None:
    if len(p.mons) == 1:
        (m,) = p.mons
        if bin(m).count("1") == 1:
            return mask_vars(m)[0]
    return None


def _is_zero_form(t, forbidden: set[int]) -> bool:
    if len(t.phase.terms) != 1:
        return False
    ((m, c),) = t.phase.terms.items()
    return c == Fraction(1, 2) and bin(m).count("1") == 1 and mask_vars(m)[0] not in forbidden


def _signature_shape(polys, seen: set[int], label: str) -> str | None:
    for i, p in enumerate(polys):
        if not _affine(p):
            return f"{label}{i} is not affine"
        pv = _vars([p])
        y = _single(p)
        if y is not None and y not in seen:
            seen.add(y)
            continue
        if not pv <= seen:
            return f"{label}{i} uses variables outside earlier entries"
    return None


def clifford_nf_violation(t) -> str | None:
    """Shape of a pure Clifford term reduced by the extended strategy."""
    if t.discard:
        return "discard set is not empty"
    if t.scalar.odd != 1:
        return "scalar is not a power of 1/sqrt(2)"
    seen: set[int] = set()
    why = _signature_shape(t.out, seen, "O")
    if why:
        return why
    why = _signature_shape(t.inp, seen, "I")
    if why:
        return why
    boundary = _vars(t.out + t.inp)
    pvars: set[int] = set()
    for m in t.phase.terms:
        pvars.update(mask_vars(m))
    if not pvars <= boundary and not _is_zero_form(t, boundary):
        return "phase uses internal variables"
    if set(t.vars) - boundary - pvars:
        return "unused summation variable"
    return None


def ground_nf_violation(t) -> str | None:
    """Shape of a Clifford term with discards reduced by the ground strategy."""
    if t.scalar.odd != 1:
        return "scalar is not a power of 1/sqrt(2)"
    for label, polys in (("O", t.out), ("I", t.inp)):
        for i, p in enumerate(polys):
            if not _affine(p):
                return f"{label}{i} is not affine"
    yd: set[int] = set()
    for d in t.discard:
        y = _single(d)
        if y is None:
            return f"discarded polynomial {d} is not a variable"
        yd.add(y)
    boundary = _vars(t.out + t.inp)
    if not yd <= boundary:
        return "a discarded variable is absent from the signatures"
    pvars: set[int] = set()
    for m in t.phase.terms:
        pvars.update(mask_vars(m))
    if _is_zero_form(t, boundary | yd):
        return None if not t.discard else "zero form keeps discards"
    for m, c in t.phase.terms.items():
        vs = mask_vars(m)
        if not vs:
            return "phase has a constant term"
        if len(vs) == 1:
            if (c * 4).denominator != 1:
                return f"linear coefficient {c} is not a multiple of 1/4"
            if vs[0] in yd:
                return "linear phase term on a discarded variable"
        elif len(vs) == 2:
            if c != Fraction(1, 2):
                return f"quadratic coefficient {c} is not 1/2"
            if set(vs) <= yd:
                return "quadratic phase term only on discarded variables"
        else:
            return "phase degree above 2"
    if not pvars <= boundary | yd:
        return "phase uses internal variables"
    return None


CLIFFORD_H_PHASES = {Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)}


def clifford_zh_violation(d) -> str | None:
    """Every H spider with legs has arity at most 2 and a phase in {1, i, -1, -i}.

    Legless H spiders are scalars and are not restricted.
    """
    for i, n in enumerate(d.nodes):
        if n.kind != "H" or n.arity == 0:
            continue
        if n.arity > 2:
            return f"H node {i} has arity {n.arity}"
        if n.param.kind != "phase" or n.param.value[0] not in CLIFFORD_H_PHASES:
            return f"H node {i} has parameter {n.param}"
    return None

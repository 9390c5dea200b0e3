"""Rewrite rules, reduction strategies and the equivalence procedure.

Every rule is a function ``rule(term, ctx)`` returning ``None`` when it does not
apply or a ``(new_term, matched_vars, position)`` triple for the first match
under the deterministic selection order: lowest variable id first, leftmost
polynomial first.

Each applied rule strictly decreases :func:`measure_tuple` (compared
lexicographically), which bounds the length of every reduction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterable, Optional

from .errors import ArityMismatch, StepLimitExceeded, StrategyError, TooManyVariables
from .poly import (
    EIGHTH,
    HALF,
    ONE,
    QUARTER,
    THREE_QUARTERS,
    BoolPoly,
    PhasePoly,
    bool_sort_key,
    hat_int,
    hat_scaled,
    mono_vars,
)
from .term import ONE_SCALAR, SopTerm, alpha_canonicalize, is_clifford, zero_form

DEFAULT_MAX_STEPS = 10**6
DEFAULT_VAR_CAP = 20
_HAT_INT_LIMIT = 12


class Verdict(str, Enum):
    EQUAL = "equal"
    DISTINCT = "distinct"
    UNKNOWN = "unknown"

    @property
    def exit_code(self) -> int:
        return {"equal": 0, "distinct": 1, "unknown": 2}[self.value]


@dataclass(frozen=True)
class Step:
    rule: str
    vars: tuple[int, ...]
    position: Optional[int]
    measure: tuple[int, ...]

    def to_json(self) -> dict:
        return {"rule": self.rule, "vars": list(self.vars), "position": self.position, "measure": list(self.measure)}


@dataclass
class Reduction:
    term: SopTerm
    trace: list[Step] = field(default_factory=list)

    @property
    def steps(self) -> int:
        return len(self.trace)

    def trace_jsonl(self) -> str:
        return "".join(json.dumps(s.to_json()) + "\n" for s in self.trace)

    def __iter__(self):
        return iter((self.term, self.trace))


def measure_tuple(t: SopTerm) -> tuple[int, ...]:
    nonlinear = sum(1 for d in t.discard if len(d.mons) >= 2)
    dsize = sum(len(d.mons) for d in t.discard)
    return (
        len(t.vars),
        nonlinear,
        dsize,
        *(len(p.mons) for p in t.out),
        *(len(p.mons) for p in t.inp),
        len(t.phase.terms),
    )


# -- matching context ----------------------------------------------------------------------


class _Ctx:
    """Occurrence data of one term, computed lazily once per step."""

    def __init__(self, t: SopTerm) -> None:
        self.t = t
        self.omask = 0
        for p in t.out:
            self.omask |= p.vars_mask
        self.imask = 0
        for p in t.inp:
            self.imask |= p.vars_mask
        self.dmask = 0
        for d in t.discard:
            self.dmask |= d.vars_mask
        self._index: dict[int, list[int]] | None = None

    @property
    def boundary(self) -> int:
        return self.omask | self.imask | self.dmask

    @property
    def index(self) -> dict[int, list[int]]:
        if self._index is None:
            idx: dict[int, list[int]] = {}
            for m in self.t.phase.terms:
                for v in mono_vars(m):
                    idx.setdefault(v, []).append(m)
            self._index = idx
        return self._index

    def internal(self) -> list[int]:
        b = self.boundary
        return sorted(v for v in self.t.vars if not (b >> v) & 1)

    def singleton_discards(self) -> int:
        mask = 0
        for d in self.t.discard:
            if d.is_single_var():
                mask |= d.vars_mask
        return mask


Match = Optional[tuple[SopTerm, tuple[int, ...], Optional[int]]]


def _without(t: SopTerm, *gone: int) -> list[int]:
    drop = set(gone)
    return [v for v in t.vars if v not in drop]


def _substitute(t: SopTerm, v: int, q: BoolPoly, *, discard: bool = True) -> tuple:
    """Apply ``y_v := q`` to P (lifted), O, I and optionally D."""
    phase = t.phase.subst(v, q)
    out = [p.subst(v, q) for p in t.out]
    inp = [p.subst(v, q) for p in t.inp]
    disc = [d.subst(v, q) for d in t.discard] if discard else list(t.discard)
    return phase, out, inp, disc


def _linear_singletons(p_mons: Iterable[int]) -> list[int]:
    """Variables appearing in exactly one monomial, that monomial being the variable alone."""
    counts: dict[int, int] = {}
    singles = set()
    for m in p_mons:
        for v in mono_vars(m):
            counts[v] = counts.get(v, 0) + 1
        if m and m & (m - 1) == 0:
            singles.add(m.bit_length() - 1)
    return sorted(v for v in singles if counts[v] == 1)


# -- pure rules --------------------------------------------------------------------------------


def rule_elim(t: SopTerm, ctx: _Ctx) -> Match:
    occ = ctx.boundary | t.phase.vars_mask
    for v in sorted(t.vars):
        if not (occ >> v) & 1:
            return t.with_(scalar=t.scalar.sqrt2(2), variables=_without(t, v)), (v,), None
    return None


def rule_hh(t: SopTerm, ctx: _Ctx) -> Match:
    terms = t.phase.terms
    for y0 in ctx.internal():
        mons = ctx.index.get(y0)
        if not mons or any(terms[m] != HALF for m in mons):
            continue
        bit = 1 << y0
        g = [m ^ bit for m in mons]
        cands = _linear_singletons(g)
        if not cands:
            continue
        y1 = cands[0]
        q = BoolPoly(frozenset(g) - {1 << y1})
        gone = set(mons)
        rest = PhasePoly({m: c for m, c in terms.items() if m not in gone})
        phase = rest.subst(y1, q)
        out = [p.subst(y1, q) for p in t.out]
        inp = [p.subst(y1, q) for p in t.inp]
        disc = [d.subst(y1, q) for d in t.discard]
        new = SopTerm(t.scalar.sqrt2(2), _without(t, y0, y1), phase, out, inp, disc)
        return new, (y0, y1), None
    return None


def rule_omega(t: SopTerm, ctx: _Ctx) -> Match:
    terms = t.phase.terms
    for y0 in ctx.internal():
        mons = ctx.index.get(y0)
        if not mons:
            continue
        bit = 1 << y0
        const = terms.get(bit)
        if const != QUARTER and const != THREE_QUARTERS:
            continue
        others = [m for m in mons if m != bit]
        if any(terms[m] != HALF for m in others):
            continue
        q = BoolPoly(frozenset(m ^ bit for m in others))
        if const == THREE_QUARTERS:
            q = q ^ ONE
        gone = set(mons)
        rest = PhasePoly({m: c for m, c in terms.items() if m not in gone})
        phase = rest + PhasePoly.constant(EIGHTH) + hat_scaled(q, THREE_QUARTERS)
        new = SopTerm(t.scalar.sqrt2(1), _without(t, y0), phase, t.out, t.inp, t.discard)
        return new, (y0,), None
    return None


def _ket_like(t: SopTerm, ctx: _Ctx, polys: tuple[BoolPoly, ...], prior: int) -> Match:
    for i, p in enumerate(polys):
        for y0 in _linear_singletons(p.mons):
            bit = 1 << y0
            if prior & bit:
                continue
            rest = BoolPoly(p.mons - {bit})
            if not rest.mons:
                continue
            if ctx.dmask & bit:
                piece = _ground_ket_piece(t, y0, rest)
                if piece is None:
                    continue
            else:
                piece = rest
            q = BoolPoly(piece.mons | {bit})
            phase, out, inp, _ = _substitute(t, y0, q, discard=False)
            new = SopTerm(t.scalar, t.vars, phase, out, inp, t.discard)
            return new, (y0,), i
        prior |= p.vars_mask
    return None


def _ground_ket_piece(t: SopTerm, y0: int, rest: BoolPoly) -> BoolPoly | None:
    """Pick ``O'`` in ``D ∪ {1}`` contained in ``rest`` when ``y0`` is discarded."""
    bit = 1 << y0
    if BoolPoly.var(y0) not in t.discard:
        return None
    for d in t.discard:
        if d.vars_mask & bit and any(m & bit and m != bit for m in d.mons):
            return None  # y0 occurs nonlinearly in a discard; the rule is unsound there
    cands = [d for d in t.discard if not d.vars_mask & bit and d.mons <= rest.mons]
    if ONE.mons <= rest.mons:
        cands.append(ONE)
    if not cands:
        return None
    return min(cands, key=bool_sort_key)


def rule_ket(t: SopTerm, ctx: _Ctx) -> Match:
    return _ket_like(t, ctx, t.out, 0)


def rule_bra(t: SopTerm, ctx: _Ctx) -> Match:
    return _ket_like(t, ctx, t.inp, ctx.omask)


def rule_z(t: SopTerm, ctx: _Ctx) -> Match:
    terms = t.phase.terms
    for y0 in ctx.internal():
        bit = 1 << y0
        if ctx.index.get(y0) != [bit] or terms[bit] != HALF:
            continue
        if len(terms) > 1 or t.discard or any(p.mons for p in t.out + t.inp):
            return zero_form(t.n_out, t.n_in), (y0,), None
    return None


# -- ground rules ------------------------------------------------------------------------------


def rule_zground(t: SopTerm, ctx: _Ctx) -> Match:
    single = ctx.singleton_discards()
    terms = t.phase.terms
    for m in t.phase.sorted_monomials():
        if not m & ~single:
            return t.with_(phase=t.phase.drop(m)), mono_vars(m), None
    for d in sorted(t.discard, key=bool_sort_key):
        if len(d.mons) < 2 or len(d.mons) > _HAT_INT_LIMIT:
            continue
        lift = hat_int(d)
        for m in t.phase.sorted_monomials():
            e = lift.get(m)
            if e not in (1, -1):
                continue
            alpha = (terms[m] * e) % 1
            acc = dict(terms)
            for hm, hc in lift.items():
                acc[hm] = (acc.get(hm, Fraction(0)) - alpha * hc) % 1
            phase = PhasePoly({k: c for k, c in acc.items() if c})
            if len(phase.terms) < len(terms):
                return t.with_(phase=phase), d.variables(), None
    return None


def rule_cstground(t: SopTerm, ctx: _Ctx) -> Match:
    if ONE in t.discard:
        return t.with_(discard=t.discard - {ONE}), (), None
    return None


def rule_xorground(t: SopTerm, ctx: _Ctx) -> Match:
    single = ctx.singleton_discards()
    ordered = sorted(t.discard, key=bool_sort_key)
    for pos, e in enumerate(ordered):
        if e.is_single_var():
            continue
        for m in e.sorted_monomials():
            if not m & ~single:
                new_e = BoolPoly(e.mons - {m})
                return t.with_(discard=(t.discard - {e}) | {new_e}), mono_vars(m), pos
        for f in ordered:
            if f is not e and len(f.mons) >= 2 and f.mons < e.mons:
                new_e = e ^ f
                return t.with_(discard=(t.discard - {e}) | {new_e}), f.variables(), pos
    return None


def rule_hground(t: SopTerm, ctx: _Ctx) -> Match:
    terms = t.phase.terms
    for y0 in mono_vars(ctx.singleton_discards()):
        bit = 1 << y0
        if (ctx.omask | ctx.imask) & bit:
            continue
        mine = BoolPoly.var(y0)
        if any(d != mine and d.vars_mask & bit for d in t.discard):
            continue
        mons = ctx.index.get(y0, [])
        if any(terms[m] != HALF for m in mons):
            continue
        q = BoolPoly(frozenset(m ^ bit for m in mons))
        gone = set(mons)
        rest = PhasePoly({m: c for m, c in terms.items() if m not in gone})
        disc = (t.discard - {mine}) | {q}
        new = SopTerm(t.scalar.sqrt2(1), _without(t, y0), rest, t.out, t.inp, disc)
        return new, (y0,), None
    return None


def rule_disc(t: SopTerm, ctx: _Ctx) -> Match:
    ordered = sorted(t.discard, key=bool_sort_key)
    for pos, e in enumerate(ordered):
        if len(e.mons) < 2:
            continue
        others = t.discard - {e}
        before = sum(1 for d in others if len(d.mons) >= 2)
        for y0 in _linear_singletons(e.mons):
            after = {d.subst(y0, e) for d in others}
            if sum(1 for d in after if len(d.mons) >= 2) > before:
                continue
            phase, out, inp, _ = _substitute(t, y0, e, discard=False)
            disc = after | {BoolPoly.var(y0)}
            new = SopTerm(t.scalar, t.vars, phase, out, inp, disc)
            return new, (y0,), pos
    return None


# -- strategies ----------------------------------------------------------------------------------

RuleFn = Callable[[SopTerm, _Ctx], Match]

RULES: dict[str, RuleFn] = {
    "Elim": rule_elim,
    "HH": rule_hh,
    "Omega": rule_omega,
    "ZGround": rule_zground,
    "CstGround": rule_cstground,
    "XorGround": rule_xorground,
    "HGround": rule_hground,
    "Disc": rule_disc,
    "KetRule": rule_ket,
    "BraRule": rule_bra,
    "ZRule": rule_z,
}

PRIORITY = ("Elim", "HH", "Omega", "ZGround", "CstGround", "XorGround", "HGround", "Disc", "KetRule", "BraRule", "ZRule")

STRATEGIES: dict[str, frozenset[str]] = {
    "clif": frozenset({"Elim", "HH", "Omega"}),
    "clif_plus": frozenset({"Elim", "HH", "Omega", "KetRule", "BraRule", "ZRule"}),
    "clif_ground": frozenset(PRIORITY),
}

_ALIASES = {"clif+": "clif_plus", "clifplus": "clif_plus", "ground": "clif_ground", "clif_ground": "clif_ground"}


def strategy_name(strategy: str) -> str:
    key = _ALIASES.get(strategy, strategy)
    if key not in STRATEGIES:
        raise StrategyError(f"unknown strategy {strategy!r}")
    return key


def default_strategy(*terms: SopTerm) -> str:
    return "clif_ground" if any(t.discard for t in terms) else "clif_plus"


def try_rule(t: SopTerm, rule: str) -> Optional[tuple[SopTerm, Step]]:
    found = RULES[rule](t, _Ctx(t))
    if found is None:
        return None
    new, vs, pos = found
    return new, Step(rule, tuple(vs), pos, measure_tuple(new))


def _rules_for(strategy: str) -> list[tuple[str, RuleFn]]:
    allowed = STRATEGIES[strategy_name(strategy)]
    return [(name, RULES[name]) for name in PRIORITY if name in allowed]


def step(t: SopTerm, strategy: str = "clif_plus") -> Optional[tuple[SopTerm, Step]]:
    ctx = _Ctx(t)
    for name, fn in _rules_for(strategy):
        found = fn(t, ctx)
        if found is not None:
            new, vs, pos = found
            return new, Step(name, tuple(vs), pos, measure_tuple(new))
    return None


def reduce(
    t: SopTerm,
    strategy: str | None = None,
    max_steps: int = DEFAULT_MAX_STEPS,
    *,
    check_measure: bool = False,
    on_step: Callable[[SopTerm, SopTerm, Step], None] | None = None,
) -> Reduction:
    """Rewrite ``t`` to a fixpoint of ``strategy`` under the rule priority order."""
    strategy = strategy_name(strategy or default_strategy(t))
    if t.discard and strategy != "clif_ground":
        raise StrategyError("terms with discards require the clif_ground strategy")
    rules = _rules_for(strategy)
    trace: list[Step] = []
    last = measure_tuple(t) if check_measure else None
    while True:
        ctx = _Ctx(t)
        for name, fn in rules:
            found = fn(t, ctx)
            if found is not None:
                break
        else:
            return Reduction(_unit_zero_form(t), trace)
        if len(trace) >= max_steps:
            raise StepLimitExceeded(max_steps, t)
        new, vs, pos = found
        st = Step(name, tuple(vs), pos, measure_tuple(new))
        if check_measure and not st.measure < last:  # type: ignore[operator]
            raise AssertionError(f"{name} did not decrease the measure: {last} -> {st.measure}")
        last = st.measure
        if on_step is not None:
            on_step(t, new, st)
        trace.append(st)
        t = new


def _unit_zero_form(t: SopTerm) -> SopTerm:
    """Reset the scalar of a terminal zero form to 1.

    The Z rule cannot fire on ``s * sum_y exp(i*pi*y) |0..0><0..0|`` (its side
    condition fails) and a scalar-only change cannot decrease the measure, so
    this normalization runs once at the fixpoint instead of as a traced step.
    """
    if t.scalar == ONE_SCALAR or t.discard or len(t.vars) != 1 or any(p.mons for p in t.out + t.inp):
        return t
    if t.phase.terms != {1 << t.vars[0]: HALF}:
        return t
    return zero_form(t.n_out, t.n_in)


def is_terminal(t: SopTerm, strategy: str | None = None) -> bool:
    strategy = strategy or default_strategy(t)
    ctx = _Ctx(t)
    return all(fn(t, ctx) is None for _, fn in _rules_for(strategy))


def normal_form(t: SopTerm, strategy: str | None = None, max_steps: int = DEFAULT_MAX_STEPS) -> SopTerm:
    return alpha_canonicalize(reduce(t, strategy, max_steps).term)


def equiv(
    t1: SopTerm,
    t2: SopTerm,
    strategy: str | None = None,
    *,
    var_cap: int = DEFAULT_VAR_CAP,
    max_steps: int = DEFAULT_MAX_STEPS,
) -> Verdict:
    """Decide ``[[t1]] = [[t2]]`` by comparing canonical normal forms.

    Clifford inputs under a complete strategy get a definitive answer. Otherwise
    a syntactic mismatch is settled by the dense oracle when the reduced terms
    are small enough, and reported as unknown when they are not.
    """
    if (t1.n_in, t1.n_out) != (t2.n_in, t2.n_out):
        raise ArityMismatch(f"arities differ: {t1.n_in}->{t1.n_out} vs {t2.n_in}->{t2.n_out}")
    strategy = strategy_name(strategy or default_strategy(t1, t2))
    ground = strategy == "clif_ground"
    if (t1.discard or t2.discard) and not ground:
        raise StrategyError("terms with discards require the clif_ground strategy")
    r1 = alpha_canonicalize(reduce(t1, strategy, max_steps).term)
    r2 = alpha_canonicalize(reduce(t2, strategy, max_steps).term)
    if r1.dumps() == r2.dumps():
        return Verdict.EQUAL
    if strategy != "clif" and is_clifford(t1) and is_clifford(t2):
        return Verdict.DISTINCT
    from .semantics import interp, interp_ground, matrix_equal

    try:
        if ground:
            a, b = interp_ground(r1, var_cap=var_cap), interp_ground(r2, var_cap=var_cap)
        else:
            a, b = interp(r1, var_cap=var_cap), interp(r2, var_cap=var_cap)
    except TooManyVariables:
        return Verdict.UNKNOWN
    return Verdict.EQUAL if matrix_equal(a, b) else Verdict.DISTINCT

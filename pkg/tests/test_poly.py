from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import assignments, eval_int_poly, naive_hat
from pathsum.errors import MissingVariable, NonDyadicPhase, NonHalfCoefficient, PolyTooLarge
from pathsum.poly import (
    ONE,
    ZERO,
    BoolPoly,
    PhasePoly,
    bp_eval,
    bp_mul,
    bp_subst,
    bp_xor,
    cofactor_to_bool,
    dyadic,
    hat_int,
    hat_scaled,
    mono,
    mono_key,
    pp_cofactor,
    pp_eval,
    pp_subst,
    to_dyadic,
)

F = Fraction


def v(i):
    return BoolPoly.var(i)


def P(*items):
    return PhasePoly.from_terms(items)


# -- fixtures ---------------------------------------------------------------------------------


def test_xor_examples():
    x, y = v(0), v(1)
    assert bp_xor(x, x) == ZERO
    assert bp_xor(x ^ y, y) == x
    assert bp_xor(ONE ^ v(1), BoolPoly.from_monomials([mono(1, 2)])) == BoolPoly.from_monomials([0, mono(1), mono(1, 2)])


def test_mul_examples():
    x, y = v(0), v(1)
    assert bp_mul(x, x) == x
    assert bp_mul(x ^ y, x ^ y) == x ^ y
    assert bp_mul(ONE ^ x, y) == y ^ BoolPoly.from_monomials([mono(0, 1)])


def test_subst_examples():
    y, z, y1, y2, y3 = v(0), v(1), v(2), v(3), v(4)
    assert bp_subst(y ^ z, 0, ZERO) == z
    assert bp_subst(y1 ^ y, 2, y1 ^ y) == y1
    prod = BoolPoly.from_monomials([mono(2, 3)])
    assert bp_subst(prod, 2, ONE ^ y3) == y2 ^ BoolPoly.from_monomials([mono(3, 4)])


def test_eval_examples():
    assert bp_eval(ONE, {}) == 1
    assert bp_eval(v(0) ^ v(1), {0: 1, 1: 1}) == 0
    p = ONE ^ v(0) ^ BoolPoly.from_monomials([mono(0, 1, 2)])
    assert bp_eval(p, {0: 1, 1: 1, 2: 0}) == 0
    with pytest.raises(MissingVariable):
        bp_eval(v(3), {})


def test_hat_examples():
    x1, y1 = v(0), v(1)
    assert hat_scaled(x1 ^ y1, F(1, 2)) == P((mono(0), F(1, 2)), (mono(1), F(1, 2)))
    assert hat_scaled(x1, F(1, 4)) == P((mono(0), F(1, 4)))
    assert hat_scaled(x1 ^ y1, F(1, 4)) == P((mono(0), F(1, 4)), (mono(1), F(1, 4)), (mono(0, 1), F(1, 2)))


def test_phase_subst_examples():
    y, z, x1, x2 = 0, 1, 2, 3
    assert pp_subst(P((mono(y, z), F(1, 2))), y, ONE) == P((mono(z), F(1, 2)))
    assert pp_subst(P((mono(y), F(1, 4))), y, v(x1) ^ v(x2)) == P(
        (mono(x1), F(1, 4)), (mono(x2), F(1, 4)), (mono(x1, x2), F(1, 2))
    )
    y1, y2 = 4, 5
    got = pp_subst(P((mono(y2, y), F(1, 2))), y, v(y) ^ v(y1))
    assert got == P((mono(y2, y), F(1, 2)), (mono(y1, y2), F(1, 2)))


def test_phase_eval_examples():
    assert pp_eval(PhasePoly(), {0: 1}) == 0
    assert pp_eval(P((mono(1, 2), F(1, 2))), {1: 1, 2: 1}) == F(1, 2)
    assert pp_eval(P((mono(0), F(1, 4)), (mono(0, 1), F(1, 2))), {0: 1, 1: 1}) == F(3, 4)


def test_cofactor_examples():
    y, z = 0, 1
    assert pp_cofactor(P((mono(y), F(1, 2)), (mono(z), F(1, 4))), y) == (P((0, F(1, 2))), P((mono(z), F(1, 4))))
    y0, y1, y2, y3 = 0, 1, 2, 3
    t = P((mono(y0), F(1, 4)), (mono(y0, y1, y2), F(1, 2)), (mono(y1, y3), F(1, 2)))
    c, r = pp_cofactor(t, y0)
    assert c == P((0, F(1, 4)), (mono(y1, y2), F(1, 2)))
    assert r == P((mono(y1, y3), F(1, 2)))
    assert pp_cofactor(P((mono(z), F(1, 2))), y) == (PhasePoly(), P((mono(z), F(1, 2))))


def test_cofactor_to_bool_examples():
    assert cofactor_to_bool(P((mono(1), F(1, 2)), (mono(2), F(1, 2)))) == v(1) ^ v(2)
    assert cofactor_to_bool(P((0, F(1, 2)))) == ONE
    with pytest.raises(NonHalfCoefficient):
        cofactor_to_bool(P((mono(0), F(1, 4))))


def test_dyadic_normalization():
    assert dyadic(5, 2) == F(1, 4)
    assert dyadic(-1, 3) == F(7, 8)
    assert to_dyadic("3/2") == F(1, 2)
    with pytest.raises(NonDyadicPhase):
        to_dyadic(F(1, 3))
    with pytest.raises(NonDyadicPhase):
        dyadic(1, -1)


def test_phase_poly_canonical_form():
    p = P((mono(0), F(1, 2)), (mono(0), F(1, 2)), (mono(1), F(5, 4)))
    assert p.terms == {mono(1): F(1, 4)}
    assert all(0 < c < 1 for c in p.terms.values())


def test_monomial_order_is_shortlex():
    ms = [mono(2), 0, mono(0, 1), mono(1), mono(0, 2)]
    assert sorted(ms, key=mono_key) == [0, mono(1), mono(2), mono(0, 1), mono(0, 2)]


def test_hat_cap():
    q = BoolPoly.from_monomials(mono(i) for i in range(40))
    with pytest.raises(PolyTooLarge):
        hat_scaled(q, F(1, 1 << 10), cap=1000)


# -- properties -------------------------------------------------------------------------------

VARS = list(range(5))
monomials = st.integers(0, (1 << len(VARS)) - 1)
bool_polys = st.frozensets(monomials, max_size=6).map(BoolPoly)
dyadics = st.builds(lambda n, d: dyadic(n, d), st.integers(0, 255), st.integers(0, 6))
phase_polys = st.lists(st.tuples(monomials, dyadics), max_size=6).map(PhasePoly.from_terms)


def _truth(p: BoolPoly):
    return [p.eval(a) for a in assignments(VARS)]


@given(bool_polys, bool_polys)
def test_bool_ops_pointwise(a, b):
    for s in assignments(VARS):
        assert (a ^ b).eval(s) == a.eval(s) ^ b.eval(s)
        assert (a * b).eval(s) == a.eval(s) & b.eval(s)


@given(bool_polys, st.sampled_from(VARS), bool_polys)
def test_bool_subst_pointwise(p, var, q):
    r = p.subst(var, q)
    for s in assignments(VARS):
        assert r.eval(s) == p.eval({**s, var: q.eval(s)})


@given(bool_polys, bool_polys)
def test_bool_canonical_iff_pointwise(a, b):
    assert (a == b) == (_truth(a) == _truth(b))


@settings(max_examples=200)
@given(st.frozensets(monomials, max_size=10).map(BoolPoly), dyadics)
def test_hat_scaled_matches_naive_lift(q, c):
    lift = naive_hat(q.sorted_monomials())
    assert hat_int(q) == lift
    h = hat_scaled(q, c)
    for s in assignments(VARS):
        assert h.eval(s) == (c * eval_int_poly(lift, s)) % 1


@given(st.frozensets(monomials, max_size=8).map(BoolPoly), dyadics)
def test_hat_truncation_is_exact(q, c):
    # the truncated expansion equals the full integer lift scaled and reduced monomial-wise
    full = PhasePoly.from_terms((m, c * k) for m, k in hat_int(q).items())
    assert hat_scaled(q, c) == full


@given(phase_polys, st.sampled_from(VARS), bool_polys)
def test_phase_subst_pointwise(p, var, q):
    r = p.subst(var, q)
    for s in assignments(VARS):
        assert r.eval(s) == p.eval({**s, var: q.eval(s)})


@given(phase_polys, st.sampled_from(VARS))
def test_cofactor_decomposition(p, var):
    c, r = p.cofactor(var)
    assert not (c.vars_mask >> var) & 1 and not (r.vars_mask >> var) & 1
    assert PhasePoly.from_terms([(m | (1 << var), k) for m, k in c.terms.items()]) + r == p


@given(phase_polys, phase_polys)
def test_phase_canonical_iff_pointwise(a, b):
    same = all(a.eval(s) == b.eval(s) for s in assignments(VARS))
    assert (a == b) == same

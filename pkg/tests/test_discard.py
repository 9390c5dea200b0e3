import numpy as np
import pytest
from hypothesis import given, settings

from generators import terminal_ground_terms, terms
from oracles import close, ground_matrix, simulate_channel, term_matrix
from pathsum.circuit import circuit_to_sop
from pathsum.discard import cpm, f_double, g_fold
from pathsum.errors import NotFoldable, NotInDiscNormalForm
from pathsum.poly import HALF, BoolPoly, PhasePoly, mono
from pathsum.rewrite import is_terminal, reduce
from pathsum.semantics import interp, interp_ground
from pathsum.term import ONE_SCALAR, Scalar, SopTerm, alpha_equal, discard, eps, generator, identity

v = BoolPoly.var


def T(scalar, variables, phase, out, inp, disc=()):
    return SopTerm(scalar, variables, PhasePoly.from_terms(phase), out, inp, disc)


def diag_copy(n_vars):
    """sum over y of |y,y><y,y| for one wire."""
    return T(ONE_SCALAR, (0,), [], [v(0), v(0)], [v(0), v(0)])


def test_cpm_of_discard_is_cap():
    # (1/2) sum exp(2 i pi (y1 + y2) z / 2) <y1, y2|
    want = T(Scalar(1, -2), (0, 1, 2), [(mono(0, 2), HALF), (mono(1, 2), HALF)], [], [v(0), v(1)])
    assert alpha_equal(cpm(discard(1)), want)
    assert interp(cpm(discard(1))) == interp(eps(1))


def test_cpm_of_pure_term_has_no_mediators():
    h = generator("h")
    d = cpm(h)
    assert len(d.vars) == 2 * len(h.vars) and not d.discard
    m = term_matrix(h)
    assert close(term_matrix(d), np.kron(m, m.conj()))


def test_cpm_of_measure_reduces_to_copy():
    assert alpha_equal(reduce(cpm(generator("measure")), "clif_plus").term, diag_copy(1))


def test_f_double_examples():
    assert alpha_equal(f_double(generator("measure")), diag_copy(1))
    h = generator("h")
    d = f_double(h)
    assert len(d.vars) == 4 and close(term_matrix(d), term_matrix(cpm(h)))


def test_f_double_rejects_non_normal_forms():
    t = T(ONE_SCALAR, (0, 1), [], [v(0)], [v(1)], [v(0) ^ v(1)])
    with pytest.raises(NotInDiscNormalForm):
        f_double(t)
    hidden = T(ONE_SCALAR, (0, 1), [], [v(0)], [v(0)], [v(1)])
    with pytest.raises(NotInDiscNormalForm):
        f_double(hidden)


def test_g_fold_examples():
    both = T(ONE_SCALAR, (0, 1), [], [v(0), v(1)], [v(0), v(1)])
    assert alpha_equal(g_fold(both), identity(1))
    assert alpha_equal(g_fold(diag_copy(1)), generator("measure"))


def test_g_fold_domain_errors():
    with pytest.raises(NotFoldable):
        g_fold(generator("measure"))
    with pytest.raises(NotFoldable):
        g_fold(identity(1))
    with pytest.raises(NotFoldable):
        g_fold(generator("h"))


@settings(max_examples=80, deadline=None)
@given(terms(max_vars=5, max_wires=2, max_discard=2))
def test_interp_ground_matches_pair_oracle(t):
    assert close(interp_ground(t).to_complex(), ground_matrix(t))


@settings(max_examples=40, deadline=None)
@given(terms(max_vars=5, max_wires=2))
def test_cpm_of_pure_is_kron_with_conjugate(t):
    m = term_matrix(t)
    assert close(interp(cpm(t)).to_complex(), np.kron(m, m.conj()))


def test_f_double_and_cpm_agree_on_normal_forms():
    for _, t in terminal_ground_terms(40, 11):
        assert is_terminal(t, "clif_ground")
        assert interp(f_double(t)) == interp(cpm(t))


def test_ground_simplification_through_pure_setting():
    for _, t in terminal_ground_terms(40, 12):
        back = g_fold(reduce(f_double(t), "clif_plus").term)
        assert alpha_equal(back, t)


def test_circuit_channel_matches_simulator():
    for c, t in terminal_ground_terms(20, 13):
        assert close(interp_ground(circuit_to_sop(c)).to_complex(), simulate_channel(c))

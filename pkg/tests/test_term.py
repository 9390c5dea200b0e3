import json
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings

from generators import random_term, terms
from oracles import close, term_matrix
from pathsum.errors import ArityMismatch, MalformedInput, NotPure
from pathsum.poly import HALF, ONE, BoolPoly, PhasePoly, mono
from pathsum.rewrite import reduce
from pathsum.term import (
    ONE_SCALAR,
    Scalar,
    SopTerm,
    alpha_canonicalize,
    alpha_equal,
    bra,
    compose,
    conjugate,
    dagger,
    eps,
    eta,
    generator,
    graph_state,
    identity,
    is_clifford,
    ket,
    loads,
    tensor,
    transpose,
)

F = Fraction
v = BoolPoly.var
S2 = 1 / np.sqrt(2)
H = np.array([[S2, S2], [S2, -S2]])


def T(scalar, variables, phase, out, inp, disc=()):
    return SopTerm(scalar, variables, PhasePoly.from_terms(phase), out, inp, disc)


# -- generators -------------------------------------------------------------------------------


def test_cz_generator():
    assert generator("cz") == T(ONE_SCALAR, (0, 1), [(mono(0, 1), HALF)], [v(0), v(1)], [v(0), v(1)])


def test_hadamard_generator():
    h = generator("h")
    assert h.scalar == Scalar(1, -1)
    assert close(term_matrix(h), H)


def test_empty_identity():
    t = generator("id", 0)
    assert (t.n_in, t.n_out, t.vars) == (0, 0, ())
    assert close(term_matrix(t), [[1]])


def test_measure_generator_shape():
    m = generator("measure")
    assert m == T(ONE_SCALAR, (0,), [], [v(0)], [v(0)], [v(0)])


def test_named_generators_match_gate_matrices():
    expect = {
        "x": [[0, 1], [1, 0]],
        "z": np.diag([1, -1]),
        "s": np.diag([1, 1j]),
        "sdg": np.diag([1, -1j]),
        "t": np.diag([1, np.exp(1j * np.pi / 4)]),
        "tdg": np.diag([1, np.exp(-1j * np.pi / 4)]),
        "cnot": [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]],
        "cz": np.diag([1, 1, 1, -1]),
    }
    for name, m in expect.items():
        assert close(term_matrix(generator(name)), np.asarray(m, dtype=complex)), name
    assert close(term_matrix(generator("rz", 1, 3)), term_matrix(generator("t")))
    assert close(term_matrix(generator("swap")), np.eye(4)[[0, 2, 1, 3]])
    assert close(term_matrix(eta(1)), np.array([[1], [0], [0], [1]]))
    assert close(term_matrix(eps(1)), np.array([[1, 0, 0, 1]]))


def test_unknown_generator():
    with pytest.raises(ValueError):
        generator("toffoli")


def test_graph_states():
    assert graph_state(2, [(0, 1)]) == T(ONE_SCALAR, (0, 1), [(mono(0, 1), HALF)], [v(0), v(1)], [])
    assert graph_state(1, []) == T(ONE_SCALAR, (0,), [], [v(0)], [])
    tri = graph_state(3, [(0, 1), (1, 2), (0, 2)])
    plus = np.ones(8) / np.sqrt(8)
    cz3 = np.ones(8)
    for i in range(8):
        b = [(i >> 2) & 1, (i >> 1) & 1, i & 1]
        cz3[i] = (-1) ** (b[0] * b[1] + b[1] * b[2] + b[0] * b[2])
    assert close(term_matrix(tri)[:, 0] / np.sqrt(8), cz3 * plus)
    assert is_clifford(tri)
    with pytest.raises(ValueError):
        graph_state(2, [(0, 0)])


# -- categorical operations -------------------------------------------------------------------


def test_compose_identity_shape():
    got = compose(identity(1), identity(1))
    # (1/2) sum exp(2 i pi (y1 + y2) y3 / 2) |y2><y1|
    want = T(Scalar(1, -2), (1, 2, 3), [(mono(1, 3), HALF), (mono(2, 3), HALF)], [v(2)], [v(1)])
    assert alpha_equal(got, want)


def test_compose_hh_shape_and_reduction():
    got = compose(generator("h"), generator("h"))
    assert len(got.vars) == 5 and got.scalar == Scalar(1, -4)
    assert alpha_equal(reduce(got, "clif").term, identity(1))


def test_compose_arity_mismatch():
    with pytest.raises(ArityMismatch):
        compose(identity(2), identity(1))


def test_cnot_conjugated_by_h_is_cz():
    h2 = tensor(identity(1), generator("h"))
    t = compose(h2, compose(generator("cnot"), h2))
    assert close(term_matrix(t), term_matrix(generator("cz")))


def test_tensor_examples():
    assert close(term_matrix(tensor(identity(1), identity(1))), np.eye(4))
    assert tensor(ket([0]), ket([1])) == ket([0, 1])
    hh = tensor(generator("h"), generator("h"))
    assert close(term_matrix(hh), np.kron(H, H))


def test_dagger_examples():
    sd = dagger(generator("s"))
    assert sd == T(ONE_SCALAR, (0,), [(mono(0), F(3, 4))], [v(0)], [v(0)])
    assert dagger(ket([0])) == bra([0])
    with pytest.raises(NotPure):
        dagger(generator("measure"))


def test_is_clifford_examples():
    assert is_clifford(generator("cz"))
    assert not is_clifford(generator("t"))
    assert not is_clifford(T(Scalar(3, 0), (0,), [], [v(0)], [v(0)]))
    cubic = T(ONE_SCALAR, (0, 1, 2), [(mono(0, 1, 2), HALF)], [v(0), v(1), v(2)], [])
    assert not is_clifford(cubic)
    assert not is_clifford(T(ONE_SCALAR, (0, 1), [], [BoolPoly.from_monomials([mono(0, 1)])], []))


def test_alpha_canonicalize_example():
    y, y1, y2 = 7, 3, 5
    t = T(ONE_SCALAR, (y, y1, y2), [(mono(y2, y), HALF), (mono(y1, y2), HALF)], [v(y1)], [v(y), v(y2)])
    want = T(ONE_SCALAR, (0, 1, 2), [(mono(2, 1), HALF), (mono(0, 2), HALF)], [v(0)], [v(1), v(2)])
    assert alpha_canonicalize(t) == want
    assert alpha_canonicalize(want) == want


def test_snake_identity_reduces_to_identity():
    snake = compose(tensor(eps(1), identity(1)), tensor(identity(1), eta(1)))
    assert alpha_equal(reduce(snake, "clif").term, reduce(identity(1), "clif").term)


# -- JSON -------------------------------------------------------------------------------------


def test_json_schema_and_round_trip():
    t = T(Scalar(3, -1), (0, 4), [(0, F(1, 8)), (mono(0, 4), HALF)], [v(4) ^ ONE], [v(0)], [v(0) ^ v(4)])
    obj = json.loads(t.dumps())
    assert set(obj) == {"n_in", "n_out", "scalar", "vars", "phase", "out", "in", "discard"}
    assert obj["scalar"] == {"odd": 3, "half_exp": -1}
    assert {"mon": [], "num": 1, "log_den": 3} in obj["phase"]
    assert loads(t.dumps()) == t


def test_json_rejects_undeclared_variables():
    bad = json.loads(identity(1).dumps())
    bad["vars"] = []
    with pytest.raises(MalformedInput):
        loads(json.dumps(bad))


def test_zero_discards_are_dropped():
    t = SopTerm(ONE_SCALAR, (0,), PhasePoly(), [v(0)], [v(0)], [BoolPoly()])
    assert t.discard == frozenset()


# -- properties -------------------------------------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(terms(max_vars=4), terms(max_vars=4))
def test_compose_and_tensor_are_functorial(f, g):
    mf, mg = term_matrix(f), term_matrix(g)
    assert close(term_matrix(tensor(f, g)), np.kron(mf, mg))
    if f.n_in == g.n_out:
        assert close(term_matrix(compose(f, g)), mf @ mg)


@settings(max_examples=60, deadline=None)
@given(terms(max_vars=6))
def test_dagger_conjugate_transpose(f):
    m = term_matrix(f)
    assert close(term_matrix(dagger(f)), m.conj().T)
    assert close(term_matrix(conjugate(f)), m.conj())
    assert close(term_matrix(transpose(f)), m.T)
    assert dagger(dagger(f)) == f


@settings(max_examples=60, deadline=None)
@given(terms(max_vars=6))
def test_alpha_canonicalize_preserves_semantics(f):
    c = alpha_canonicalize(f)
    assert close(term_matrix(c), term_matrix(f))
    assert alpha_canonicalize(c) == c
    assert loads(c.dumps()) == c


def test_associativity_semantic():
    rng = random.Random(3)
    for _ in range(30):
        f = random_term(rng, 2, 1, 1)
        g = random_term(rng, 2, 1, 1)
        h = random_term(rng, 2, 1, 1)
        assert close(term_matrix(compose(compose(f, g), h)), term_matrix(compose(f, compose(g, h))))

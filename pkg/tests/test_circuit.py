import random

import pytest
from hypothesis import given, settings

from generators import ALL_1Q, clifford_circuits, ground_circuits, random_circuit, random_ground_circuit
from oracles import close, simulate, simulate_channel
from pathsum.circuit import amplitude, circuit_to_sop, parse_circuit, probability
from pathsum.errors import ArityMismatch, CircuitSyntaxError, NotPure
from pathsum.rewrite import reduce
from pathsum.semantics import interp, interp_ground
from pathsum.term import alpha_equal, generator, identity


def test_parse_comments_and_separators():
    c = parse_circuit("qubits 2  # header\nh 0; cx 0 1\n\nrz 3 3 1\n")
    assert [str(op) for op in c.ops] == ["h 0", "cx 0 1", "rz 3 3 1"]
    assert [op.line for op in c.ops] == [2, 2, 4]
    assert [str(op) for op in parse_circuit(c.to_text()).ops] == [str(op) for op in c.ops]


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ("h 0", 1, "header"),
        ("qubits 2\nh 2", 2, "out of range"),
        ("qubits 1\nfoo 0", 2, "unknown"),
        ("qubits 1\nrz 1 -2 0", 2, "dyadic"),
        ("qubits 2\ncx 0", 2, "takes 2"),
        ("qubits 2\ncz 1 1", 2, "distinct"),
        ("qubits 1\nh 0\npost0 0\nh 0", 4, "consumed"),
        ("qubits 1\nh 0\nprep0 0", 3, "live"),
        ("qubits 1\nqubits 1", 2, "duplicate"),
        ("qubits x", 1, "integer"),
    ],
)
def test_parse_errors_report_lines(text, line, fragment):
    with pytest.raises(CircuitSyntaxError) as err:
        parse_circuit(text)
    assert err.value.line == line and fragment in str(err.value)


def test_bell_amplitudes():
    c = parse_circuit("qubits 2\nh 0\ncx 0 1")
    for out, want in (("00", 2**-0.5), ("11", 2**-0.5), ("01", 0), ("10", 0)):
        a = amplitude(c, "00", out)
        assert complex(a) == pytest.approx(want)
    assert str(amplitude(c, "00", "11")) == "1/sqrt(2)^1 * (1)"
    assert amplitude(c, "00", "01").is_zero()
    with pytest.raises(ArityMismatch):
        amplitude(c, "0", "00")


def test_identity_circuit():
    c = parse_circuit("qubits 1\nh 0\nh 0")
    assert complex(amplitude(c, "0", "0")) == pytest.approx(1)
    assert complex(amplitude(c, "1", "0")) == pytest.approx(0)
    assert alpha_equal(reduce(circuit_to_sop(c), "clif").term, identity(1))


def test_conjugated_cnot_is_cz():
    c = parse_circuit("qubits 2\nh 1\ncx 0 1\nh 1")
    assert alpha_equal(reduce(circuit_to_sop(c), "clif").term, reduce(generator("cz"), "clif").term)


def test_measure_circuit():
    c = parse_circuit("qubits 1\nh 0\nmeasure 0")
    t = circuit_to_sop(c)
    assert len(t.discard) == 1 and not c.is_pure
    assert close(interp_ground(t).to_complex(), simulate_channel(c))
    assert complex(probability(c, "0", "1")) == pytest.approx(0.5)
    with pytest.raises(NotPure):
        amplitude(c, "0", "1")


def test_empty_circuit_is_identity():
    for n in range(4):
        t = circuit_to_sop(parse_circuit(f"qubits {n}"))
        assert alpha_equal(t, identity(n))


def test_prep_and_post_change_arity():
    c = parse_circuit("qubits 2\nprep0 1\ncx 0 1\npost0 0")
    assert (c.n_in, c.n_out, c.inputs, c.outputs) == (1, 1, [0], [1])
    assert close(interp(circuit_to_sop(c)).to_complex(), simulate(c))


def test_literal_and_substituted_builds_agree():
    rng = random.Random(3)
    for _ in range(30):
        c = random_circuit(rng, rng.randint(1, 3), rng.randint(0, 10), ALL_1Q)
        assert interp(circuit_to_sop(c)) == interp(reduce(circuit_to_sop(c, literal=True), "clif_plus").term)
        g = random_ground_circuit(rng, rng.randint(1, 3), rng.randint(1, 8))
        # the literal build carries one mediator per wire per layer, so reduce before evaluating
        lit = reduce(circuit_to_sop(g, literal=True), "clif_ground").term
        assert interp_ground(circuit_to_sop(g)) == interp_ground(lit)


def test_random_circuits_match_simulator():
    rng = random.Random(21)
    for _ in range(40):
        c = random_circuit(rng, rng.randint(1, 6), rng.randint(0, 25), ALL_1Q)
        r = reduce(circuit_to_sop(c), "clif_plus").term
        assert close(interp(r).to_complex(), simulate(c))


def test_amplitudes_match_simulator_on_every_basis_pair():
    rng = random.Random(22)
    for _ in range(6):
        n = rng.randint(1, 3)
        c = random_circuit(rng, n, rng.randint(1, 12), ALL_1Q)
        u = simulate(c)
        for i in range(2**n):
            for o in range(2**n):
                ib, ob = format(i, f"0{n}b"), format(o, f"0{n}b")
                assert complex(amplitude(c, ib, ob)) == pytest.approx(u[o, i], abs=1e-9)


def test_term_size_is_linear_in_gate_count():
    rng = random.Random(23)
    for depth in (10, 40, 160):
        c = random_circuit(rng, 4, depth, ALL_1Q)
        t = circuit_to_sop(c)
        # one fresh variable per Hadamard plus the inputs
        assert len(t.vars) <= 4 + sum(op.name == "h" for op in c.ops)


def test_ground_probabilities_match_channel():
    rng = random.Random(24)
    for _ in range(15):
        c = random_ground_circuit(rng, rng.randint(1, 3), rng.randint(1, 10))
        ch = simulate_channel(c)
        n_in, n_out = c.n_in, c.n_out
        for i in range(2**n_in):
            for o in range(2**n_out):
                ib, ob = format(i, f"0{n_in}b") if n_in else "", format(o, f"0{n_out}b") if n_out else ""
                want = ch[o * 2**n_out + o, i * 2**n_in + i].real
                assert complex(probability(c, ib, ob)) == pytest.approx(want, abs=1e-9)


@settings(max_examples=40, deadline=None)
@given(clifford_circuits(max_qubits=3, max_depth=12))
def test_clifford_circuit_terms_match_simulator(c):
    assert close(interp(circuit_to_sop(c)).to_complex(), simulate(c))


@settings(max_examples=40, deadline=None)
@given(ground_circuits(max_qubits=3, max_depth=10))
def test_ground_circuit_terms_match_channel(c):
    assert close(interp_ground(circuit_to_sop(c)).to_complex(), simulate_channel(c))

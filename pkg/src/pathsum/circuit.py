"""Text circuits, their terms, and single-amplitude queries.

Grammar (one statement per line or separated by ``;``, ``#`` starts a comment)::

    qubits N
    h q | x q | z q | s q | sdg q | t q | tdg q
    rz k d q          # phase k / 2**d
    cz a b | cx a b
    prep0 q | post0 q | measure q | discard q

A qubit whose first operation is ``prep0`` starts dead; every other qubit is an
input. ``post0`` and ``discard`` kill a qubit, ``measure`` keeps it alive.
Outputs are the live qubits in index order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import ArityMismatch, CircuitSyntaxError, NotPure
from .poly import HALF, ZERO, BoolPoly, PhasePoly, dyadic, hat_scaled
from .rewrite import reduce
from .semantics import ExactScalar, scalar_value
from .term import (
    ONE_SCALAR,
    SopTerm,
    bra,
    compose,
    discard,
    generator,
    identity,
    ket,
    measure,
    permute_inputs,
    permute_outputs,
    tensor,
)

_ONE_QUBIT = ("h", "x", "z", "s", "sdg", "t", "tdg")
_TWO_QUBIT = ("cz", "cx")
_WIRE_OPS = ("prep0", "post0", "measure", "discard")


@dataclass(frozen=True)
class Op:
    name: str
    qubits: tuple[int, ...]
    param: Fraction | None = None
    line: int = 0

    def __str__(self) -> str:
        if self.name == "rz":
            assert self.param is not None
            d = self.param.denominator.bit_length() - 1
            return f"rz {self.param.numerator} {d} {self.qubits[0]}"
        return " ".join([self.name, *map(str, self.qubits)])


@dataclass
class Circuit:
    n_qubits: int
    ops: list[Op] = field(default_factory=list)

    def _lifecycle(self) -> tuple[list[int], list[int]]:
        first: dict[int, str] = {}
        for op in self.ops:
            for q in op.qubits:
                first.setdefault(q, op.name)
        inputs = [q for q in range(self.n_qubits) if first.get(q) != "prep0"]
        live = set(inputs)
        for op in self.ops:
            if op.name == "prep0":
                live.add(op.qubits[0])
            elif op.name in ("post0", "discard"):
                live.discard(op.qubits[0])
        return inputs, sorted(live)

    @property
    def inputs(self) -> list[int]:
        return self._lifecycle()[0]

    @property
    def outputs(self) -> list[int]:
        return self._lifecycle()[1]

    @property
    def n_in(self) -> int:
        return len(self.inputs)

    @property
    def n_out(self) -> int:
        return len(self.outputs)

    @property
    def is_pure(self) -> bool:
        return all(op.name not in ("measure", "discard") for op in self.ops)

    def to_text(self) -> str:
        return "".join([f"qubits {self.n_qubits}\n"] + [f"{op}\n" for op in self.ops])


def _int(tok: str, line: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise CircuitSyntaxError(line, f"expected an integer {what}, got {tok!r}") from None


def parse_circuit(text: str) -> Circuit:
    """Parse circuit text, reporting the first error with its line number."""
    n: int | None = None
    ops: list[Op] = []
    live: set[int] = set()
    seen: set[int] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        for stmt in raw.split("#", 1)[0].split(";"):
            toks = stmt.split()
            if not toks:
                continue
            name, args = toks[0].lower(), toks[1:]
            if n is None:
                if name != "qubits" or len(args) != 1:
                    raise CircuitSyntaxError(lineno, "expected header 'qubits N'")
                n = _int(args[0], lineno, "qubit count")
                if n < 0:
                    raise CircuitSyntaxError(lineno, "qubit count must be non-negative")
                continue
            if name == "qubits":
                raise CircuitSyntaxError(lineno, "duplicate 'qubits' header")
            param = None
            if name in _ONE_QUBIT or name in _WIRE_OPS:
                arity = 1
            elif name in _TWO_QUBIT:
                arity = 2
            elif name == "rz":
                if len(args) != 3:
                    raise CircuitSyntaxError(lineno, "rz takes 'k d q'")
                k, d = _int(args[0], lineno, "numerator"), _int(args[1], lineno, "exponent")
                if d < 0:
                    raise CircuitSyntaxError(lineno, f"rz exponent {d} is negative: the phase must be dyadic")
                param = dyadic(k, d)
                args = args[2:]
                arity = 1
            else:
                raise CircuitSyntaxError(lineno, f"unknown operation {name!r}")
            if len(args) != arity:
                raise CircuitSyntaxError(lineno, f"{name} takes {arity} qubit index(es)")
            qs = tuple(_int(a, lineno, "qubit index") for a in args)
            for q in qs:
                if not 0 <= q < n:
                    raise CircuitSyntaxError(lineno, f"qubit index {q} out of range for {n} qubits")
            if len(set(qs)) != len(qs):
                raise CircuitSyntaxError(lineno, f"{name} needs distinct qubits")
            for q in qs:
                if q not in seen:
                    seen.add(q)
                    if name != "prep0":
                        live.add(q)
            if name == "prep0":
                if qs[0] in live:
                    raise CircuitSyntaxError(lineno, f"prep0 on live qubit {qs[0]}")
                live.add(qs[0])
            else:
                for q in qs:
                    if q not in live:
                        raise CircuitSyntaxError(lineno, f"{name} on qubit {q} after it was consumed")
                if name in ("post0", "discard"):
                    live.discard(qs[0])
            ops.append(Op(name, qs, param, lineno))
    if n is None:
        raise CircuitSyntaxError(1, "missing header 'qubits N'")
    return Circuit(n, ops)


def _gate_term(op: Op) -> SopTerm:
    if op.name == "rz":
        assert op.param is not None
        return generator("rz", op.param.numerator, op.param.denominator.bit_length() - 1)
    return generator(op.name)


def circuit_to_sop(c: Circuit, *, literal: bool = False) -> SopTerm:
    """Build the term of a circuit.

    By default each gate is plugged in by substituting its input variables with
    the current output polynomials, which skips the mediator variables that a
    composition would create and then eliminate. ``literal=True`` instead folds
    padded gate layers with ``compose``/``tensor``.
    """
    if literal:
        return _literal(c)
    inputs, outputs = c._lifecycle()
    nxt = 0
    out: dict[int, BoolPoly] = {}
    for q in inputs:
        out[q] = BoolPoly.var(nxt)
        nxt += 1
    variables = list(range(nxt))
    inp = [out[q] for q in inputs]
    phase = PhasePoly()
    scalar = ONE_SCALAR
    disc: list[BoolPoly] = []
    for op in c.ops:
        name, qs = op.name, op.qubits
        if name == "prep0":
            out[qs[0]] = ZERO
        elif name == "post0":
            z = nxt
            nxt += 1
            variables.append(z)
            phase = phase + hat_scaled(out.pop(qs[0]) * BoolPoly.var(z), HALF)
            scalar = scalar.sqrt2(-2)
        elif name == "measure":
            disc.append(out[qs[0]])
        elif name == "discard":
            disc.append(out.pop(qs[0]))
        else:
            g = _gate_term(op)
            g = g.renumbered(nxt)
            nxt += len(g.vars)
            gphase = g.phase
            gout = list(g.out)
            wired = []
            for p, q in zip(g.inp, qs):
                (m,) = p.mons
                v = m.bit_length() - 1
                wired.append(v)
                gphase = gphase.subst(v, out[q])
                gout = [o.subst(v, out[q]) for o in gout]
            phase = phase + gphase
            scalar = scalar * g.scalar
            variables.extend(v for v in g.vars if v not in wired)
            for q, o in zip(qs, gout):
                out[q] = o
    return SopTerm(scalar, variables, phase, [out[q] for q in outputs], inp, disc).renumbered(0)


def _place(gate: SopTerm, positions: Sequence[int], width: int) -> SopTerm:
    """Pad a k -> k ``gate`` with identities so it acts on ``positions`` of ``width`` wires."""
    rest = [i for i in range(width) if i not in positions]
    inv = [0] * width
    for j, p in enumerate(list(positions) + rest):
        inv[p] = j
    padded = tensor(gate, identity(len(rest)))
    return permute_outputs(permute_inputs(padded, inv), inv)


def _literal(c: Circuit) -> SopTerm:
    inputs, outputs = c._lifecycle()
    wires = list(inputs)
    t = identity(len(wires))
    for op in c.ops:
        name, qs = op.name, op.qubits
        if name == "prep0":
            t = tensor(t, ket([0]))
            wires.append(qs[0])
            continue
        pos = [wires.index(q) for q in qs]
        width = len(wires)
        if name == "post0":
            layer = _consume(bra([0]), pos[0], width)
            wires.remove(qs[0])
        elif name == "discard":
            layer = _consume(discard(1), pos[0], width)
            wires.remove(qs[0])
        elif name == "measure":
            layer = _place(measure(), pos, width)
        else:
            layer = _place(_gate_term(op), pos, width)
        t = compose(layer, t)
    order = [wires.index(q) for q in outputs]
    return permute_outputs(t, order)


def _consume(effect: SopTerm, pos: int, width: int) -> SopTerm:
    """``id ⊗ effect ⊗ id`` removing wire ``pos`` from a ``width``-wire register."""
    return tensor(tensor(identity(pos), effect), identity(width - pos - 1))


def _bits(bits: Sequence[int] | str) -> list[int]:
    out = [int(b) for b in bits]
    if any(b not in (0, 1) for b in out):
        raise ValueError(f"not a bit string: {bits!r}")
    return out


def _sandwich(t: SopTerm, in_bits, out_bits) -> SopTerm:
    i, o = _bits(in_bits), _bits(out_bits)
    if len(i) != t.n_in or len(o) != t.n_out:
        raise ArityMismatch(f"expected {t.n_in} input and {t.n_out} output bits, got {len(i)} and {len(o)}")
    return compose(bra(o), compose(t, ket(i)))


def amplitude(c: Circuit | SopTerm, in_bits, out_bits, **kwargs) -> ExactScalar:
    """``<out| C |in>`` computed by reducing the closed term and evaluating it exactly."""
    t = circuit_to_sop(c) if isinstance(c, Circuit) else c
    if t.discard:
        raise NotPure("amplitudes need a pure circuit; use probability for measured circuits")
    closed = reduce(_sandwich(t, in_bits, out_bits), "clif_plus").term
    return scalar_value(closed, **kwargs)


def probability(c: Circuit | SopTerm, in_bits, out_bits, **kwargs) -> ExactScalar:
    """Probability of reading ``out_bits`` after running the channel on ``|in_bits>``."""
    t = circuit_to_sop(c) if isinstance(c, Circuit) else c
    closed = _sandwich(t, in_bits, out_bits)
    if closed.discard:
        closed = reduce(closed, "clif_ground").term
    from .discard import cpm

    return scalar_value(reduce(cpm(closed), "clif_plus").term, **kwargs)


__all__ = ["Circuit", "Op", "amplitude", "circuit_to_sop", "parse_circuit", "probability"]

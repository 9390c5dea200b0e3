"""ZH diagrams and the translations between diagrams and terms.

A diagram is a list of nodes (Z spiders, parameterized H spiders and ground
nodes), a list of wires joining two ports, and ordered boundary ports. A port
is a pair ``(node, index)``; every port is used exactly once.

H spider semantics are unnormalized: the entry is ``r`` when every leg carries
1 and ``1`` otherwise. A 0-ary H spider is the scalar ``r``.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import DegenerateParam, MalformedInput, NotPure, UnsupportedParamExact
from .poly import HALF, BoolPoly, PhasePoly, mono, mono_vars, to_dyadic
from .term import ONE_SCALAR, Scalar, SopTerm

Port = tuple[int, int]


@dataclass(frozen=True)
class HParam:
    """H spider parameter: ``phase`` (exp(2*pi*i*c)), ``zero``, ``real`` or ``complex``."""

    kind: str
    value: tuple[Fraction, ...] = ()

    @staticmethod
    def phase(c: object) -> HParam:
        return HParam("phase", (to_dyadic(c),))

    @staticmethod
    def zero() -> HParam:
        return HParam("zero")

    @staticmethod
    def real(r: object) -> HParam:
        return HParam.complex(r, 0)

    @staticmethod
    def complex(re: object, im: object) -> HParam:
        a, b = Fraction(re), Fraction(im)  # type: ignore[arg-type]
        if b == 0:
            if a == 0:
                return HParam.zero()
            if a == 1:
                return HParam.phase(0)
            if a == -1:
                return HParam.phase(HALF)
            return HParam("real", (a,))
        if a == 0 and b in (1, -1):
            return HParam.phase(Fraction(1, 4) if b == 1 else Fraction(3, 4))
        return HParam("complex", (a, b))

    @property
    def is_exact(self) -> bool:
        return self.kind in ("phase", "zero")

    def to_complex(self) -> complex:
        if self.kind == "phase":
            return cmath.exp(2j * cmath.pi * float(self.value[0]))
        if self.kind == "zero":
            return 0j
        if self.kind == "real":
            return complex(float(self.value[0]))
        return complex(float(self.value[0]), float(self.value[1]))

    def to_json(self) -> dict:
        if self.kind == "phase":
            c = self.value[0]
            return {"kind": "phase", "num": c.numerator, "log_den": c.denominator.bit_length() - 1}
        if self.kind == "zero":
            return {"kind": "zero"}
        if self.kind == "real":
            return {"kind": "real", "value": str(self.value[0])}
        return {"kind": "complex", "re": str(self.value[0]), "im": str(self.value[1])}

    @staticmethod
    def from_json(obj: object) -> HParam:
        if obj is None:
            return MINUS_ONE
        if not isinstance(obj, dict):
            raise MalformedInput(f"bad H parameter {obj!r}")
        try:
            kind = obj["kind"]
            if kind == "phase":
                return HParam.phase(Fraction(int(obj["num"]), 1 << int(obj["log_den"])))
            if kind == "zero":
                return HParam.zero()
            if kind == "real":
                return HParam.real(Fraction(obj["value"]))
            if kind == "complex":
                return HParam.complex(Fraction(obj["re"]), Fraction(obj["im"]))
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise MalformedInput(f"bad H parameter {obj!r}: {exc}") from exc
        raise MalformedInput(f"unknown H parameter kind {obj.get('kind')!r}")

    def label(self) -> str:
        if self.kind == "phase":
            c = self.value[0]
            return {Fraction(0): "1", HALF: "-1", Fraction(1, 4): "i", Fraction(3, 4): "-i"}.get(c, f"e^(2iπ·{c})")
        if self.kind == "zero":
            return "0"
        if self.kind == "real":
            return str(self.value[0])
        return f"{self.value[0]}+{self.value[1]}i"


MINUS_ONE = HParam.phase(HALF)


@dataclass(frozen=True)
class Node:
    kind: str  # "Z", "H" or "G"
    arity: int
    param: HParam | None = None

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind, "arity": self.arity}
        if self.kind == "H":
            out["param"] = (self.param or MINUS_ONE).to_json()
        return out


@dataclass
class ZhDiagram:
    nodes: list[Node] = field(default_factory=list)
    wires: list[tuple[Port, Port]] = field(default_factory=list)
    inputs: list[Port] = field(default_factory=list)
    outputs: list[Port] = field(default_factory=list)

    def validate(self) -> ZhDiagram:
        used: set[Port] = set()
        ports = [p for w in self.wires for p in w] + list(self.inputs) + list(self.outputs)
        for n, i in ports:
            if not (0 <= n < len(self.nodes)) or not (0 <= i < self.nodes[n].arity):
                raise MalformedInput(f"port ({n}, {i}) does not exist")
            if (n, i) in used:
                raise MalformedInput(f"port ({n}, {i}) is used twice")
            used.add((n, i))
        for n, node in enumerate(self.nodes):
            if node.kind not in ("Z", "H", "G"):
                raise MalformedInput(f"unknown node kind {node.kind!r}")
            if node.kind == "G" and node.arity != 1:
                raise MalformedInput("ground nodes have exactly one leg")
            for i in range(node.arity):
                if (n, i) not in used:
                    raise MalformedInput(f"port ({n}, {i}) is dangling")
        return self

    @property
    def is_pure(self) -> bool:
        return all(n.kind != "G" for n in self.nodes)

    def counts(self) -> dict[str, int]:
        out = {"Z": 0, "H": 0, "G": 0}
        for n in self.nodes:
            out[n.kind] += 1
        return out

    # serialization
    def to_json(self) -> dict:
        return {
            "nodes": [n.to_json() for n in self.nodes],
            "wires": [[list(a), list(b)] for a, b in self.wires],
            "inputs": [list(p) for p in self.inputs],
            "outputs": [list(p) for p in self.outputs],
        }

    def dumps(self, indent: int | None = None) -> str:
        return json.dumps(self.to_json(), indent=indent)

    @staticmethod
    def from_json(obj: object) -> ZhDiagram:
        if not isinstance(obj, dict):
            raise MalformedInput("ZH JSON must be an object")
        try:
            nodes = []
            for n in obj["nodes"]:
                kind = n["kind"]
                param = HParam.from_json(n.get("param")) if kind == "H" else None
                nodes.append(Node(kind, int(n["arity"]), param))
            wires = [(_port(a), _port(b)) for a, b in obj.get("wires", [])]
            inputs = [_port(p) for p in obj.get("inputs", [])]
            outputs = [_port(p) for p in obj.get("outputs", [])]
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInput(f"malformed ZH JSON: {exc}") from exc
        return ZhDiagram(nodes, wires, inputs, outputs).validate()

    @staticmethod
    def loads(text: str) -> ZhDiagram:
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MalformedInput(f"invalid JSON: {exc}") from exc
        return ZhDiagram.from_json(obj)

    def to_dot(self) -> str:
        lines = ["graph zh {", "  rankdir=LR;"]
        for i, n in enumerate(self.nodes):
            if n.kind == "Z":
                attrs = 'shape=circle, style=filled, fillcolor=white, label=""'
            elif n.kind == "H":
                attrs = f'shape=box, style=filled, fillcolor=yellow, label="{(n.param or MINUS_ONE).label()}"'
            else:
                attrs = 'shape=invtriangle, label="ground"'
            lines.append(f"  n{i} [{attrs}];")
        for k, (n, _) in enumerate(self.inputs):
            lines.append(f'  in{k} [shape=plaintext, label="in{k}"];')
            lines.append(f"  in{k} -- n{n};")
        for k, (n, _) in enumerate(self.outputs):
            lines.append(f'  out{k} [shape=plaintext, label="out{k}"];')
            lines.append(f"  n{n} -- out{k};")
        for (a, _), (b, _) in self.wires:
            lines.append(f"  n{a} -- n{b};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _port(p: object) -> Port:
    n, i = p  # type: ignore[misc]
    return int(n), int(i)


class _Builder:
    """Incremental diagram construction with automatic port numbering."""

    def __init__(self) -> None:
        self.kinds: list[tuple[str, HParam | None]] = []
        self.legs: list[int] = []
        self.wires: list[tuple[Port, Port]] = []
        self.inputs: list[Port] = []
        self.outputs: list[Port] = []

    def node(self, kind: str, param: HParam | None = None) -> int:
        self.kinds.append((kind, param))
        self.legs.append(0)
        return len(self.kinds) - 1

    def port(self, n: int) -> Port:
        self.legs[n] += 1
        return (n, self.legs[n] - 1)

    def connect(self, a: int, b: int) -> None:
        self.wires.append((self.port(a), self.port(b)))

    def h(self, param: HParam, *targets: int) -> int:
        n = self.node("H", param)
        for t in targets:
            self.connect(n, t)
        return n

    def build(self, order: Sequence[int] | None = None) -> ZhDiagram:
        order = list(order) if order is not None else list(range(len(self.kinds)))
        where = {old: new for new, old in enumerate(order)}
        nodes = [Node(self.kinds[i][0], self.legs[i], self.kinds[i][1]) for i in order]

        def mv(p: Port) -> Port:
            return (where[p[0]], p[1])

        return ZhDiagram(
            nodes,
            [(mv(a), mv(b)) for a, b in self.wires],
            [mv(p) for p in self.inputs],
            [mv(p) for p in self.outputs],
        ).validate()


# -- ZH -> SOP ------------------------------------------------------------------------------------


class _UnionFind:
    def __init__(self) -> None:
        self.parent: dict[Port, Port] = {}

    def find(self, p: Port) -> Port:
        self.parent.setdefault(p, p)
        root = p
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[p] != root:
            self.parent[p], p = root, self.parent[p]
        return root

    def union(self, a: Port, b: Port) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def zh_to_sop(d: ZhDiagram) -> SopTerm:
    """Translate a diagram into a term with one variable per connected wire class.

    Z spiders share a single variable across their legs, phase H spiders add a
    phase monomial over their legs, H(0) spiders add a fresh variable forcing
    the product of their legs to vanish, and ground nodes discard their leg.
    """
    uf = _UnionFind()
    for n, node in enumerate(d.nodes):
        for i in range(node.arity):
            uf.find((n, i))
        if node.kind == "Z":
            for i in range(1, node.arity):
                uf.union((n, 0), (n, i))
    for a, b in d.wires:
        uf.union(a, b)

    var_of: dict[Port, int] = {}
    z_classes = [uf.find((n, 0)) for n, node in enumerate(d.nodes) if node.kind == "Z" and node.arity]
    other = [uf.find((n, i)) for n, node in enumerate(d.nodes) if node.kind != "Z" for i in range(node.arity)]
    for root in z_classes + other:
        if root not in var_of:
            var_of[root] = len(var_of)
    nvars = len(var_of)

    def var(p: Port) -> int:
        return var_of[uf.find(p)]

    scalar = ONE_SCALAR
    terms: list[tuple[int, Fraction]] = []
    discard: list[BoolPoly] = []
    for n, node in enumerate(d.nodes):
        if node.kind == "Z" and node.arity == 0:
            scalar = scalar.sqrt2(2)
        elif node.kind == "G":
            discard.append(BoolPoly.var(var((n, 0))))
        elif node.kind == "H":
            param = node.param or MINUS_ONE
            legs = mono(*(var((n, i)) for i in range(node.arity)))
            if param.kind == "phase":
                terms.append((legs, param.value[0]))
            elif param.kind == "zero":
                z = nvars
                nvars += 1
                terms.append((legs | (1 << z), HALF))
                scalar = scalar.sqrt2(-2)
            elif param.kind == "real" and node.arity == 0:
                split = Scalar.from_rational(param.value[0])
                if split is None:
                    raise UnsupportedParamExact(f"scalar {param.value[0]} is not ±odd·2^k")
                s, neg = split
                scalar = scalar * s
                if neg:
                    terms.append((0, HALF))
            else:
                raise UnsupportedParamExact(f"H parameter {param.label()} has no exact translation")
    phase = PhasePoly.from_terms(terms)
    out = [BoolPoly.var(var(p)) for p in d.outputs]
    inp = [BoolPoly.var(var(p)) for p in d.inputs]
    return SopTerm(scalar, range(nvars), phase, out, inp, discard)


# -- SOP -> ZH ------------------------------------------------------------------------------------


def sop_to_zh(t: SopTerm) -> ZhDiagram:
    """Translate a term into a diagram of linear size.

    Every variable becomes a Z spider and every phase monomial an H spider on
    those spiders. A signature or discard entry that is not a single variable
    goes through a parity gadget: spiders ``w`` (the wire) and ``z`` joined by
    H(-1), plus one H(-1) per monomial on ``z`` and the monomial's spiders,
    and a scalar 1/2. Summing over ``z`` forces ``w`` to equal the polynomial.
    """
    b = _Builder()
    entries: list[tuple[str, BoolPoly]] = (
        [("out", p) for p in t.out] + [("in", p) for p in t.inp] + [("disc", p) for p in t.sorted_discard()]
    )
    gadgets = [(role, p) for role, p in entries if not p.is_single_var()]

    gz = [b.node("Z") for _ in gadgets]
    gw = [b.node("Z") for _ in gadgets]
    var_node = {v: b.node("Z") for v in sorted(t.vars)}
    first_extra = len(b.kinds)

    def anchor(p: BoolPoly) -> int:
        (m,) = p.mons
        return var_node[m.bit_length() - 1]

    # wire up signatures in order, allocating boundary ports as we go
    outs: list[Port] = []
    ins: list[Port] = []
    grounds: list[int] = []
    k = 0
    for role, p in entries:
        if p.is_single_var():
            target = anchor(p)
        else:
            target = gw[k]
            z = gz[k]
            b.h(MINUS_ONE, z, target)
            for m in p.sorted_monomials():
                b.h(MINUS_ONE, z, *(var_node[v] for v in mono_vars(m)))
            b.h(HParam.real(HALF))
            k += 1
        if role == "out":
            outs.append(b.port(target))
        elif role == "in":
            ins.append(b.port(target))
        else:
            g = b.node("G")
            grounds.append(g)
            b.connect(g, target)

    for m, c in t.phase.sorted_terms():
        b.h(HParam.phase(c), *(var_node[v] for v in mono_vars(m)))

    _scalar_nodes(b, t.scalar)

    b.outputs = outs
    b.inputs = ins
    extra = list(range(first_extra, len(b.kinds)))
    u_nodes = [n for n in extra if b.kinds[n][0] == "Z"]
    h_nodes = [n for n in extra if b.kinds[n][0] == "H"]
    g_nodes = [n for n in extra if b.kinds[n][0] == "G"]
    order = gz + gw + list(var_node.values()) + u_nodes + h_nodes + g_nodes
    return b.build(order)


def _scalar_nodes(b: _Builder, s: Scalar) -> None:
    if s.odd != 1:
        b.h(HParam.real(s.odd))
    e = s.half_exp
    if e % 2:
        u = b.node("Z")
        b.h(HParam.phase(Fraction(1, 4)), u)
        b.h(HParam.phase(Fraction(7, 8)))
        e -= 1
    if e:
        b.h(HParam.real(Fraction(2) ** (e // 2)))


def simplify(d: ZhDiagram) -> ZhDiagram:
    """Optional size cleanup: merge all 0-ary H spiders into at most two scalar nodes."""
    keep = [i for i, n in enumerate(d.nodes) if not (n.kind == "H" and n.arity == 0)]
    phase = Fraction(0)
    real = Fraction(1)
    zero = False
    for n in d.nodes:
        if n.kind == "H" and n.arity == 0:
            p = n.param or MINUS_ONE
            if p.kind == "phase":
                phase = (phase + p.value[0]) % 1
            elif p.kind == "zero":
                zero = True
            elif p.kind == "real":
                real *= p.value[0]
            else:
                return d
    where = {old: new for new, old in enumerate(keep)}
    nodes = [d.nodes[i] for i in keep]
    if zero:
        nodes.append(Node("H", 0, HParam.zero()))
    else:
        if real != 1:
            nodes.append(Node("H", 0, HParam.real(real)))
        if phase:
            nodes.append(Node("H", 0, HParam.phase(phase)))

    def mv(p: Port) -> Port:
        return (where[p[0]], p[1])

    return ZhDiagram(nodes, [(mv(a), mv(c)) for a, c in d.wires], [mv(p) for p in d.inputs], [mv(p) for p in d.outputs])


# -- gadgets ----------------------------------------------------------------------------------------


def _map_term(poly: BoolPoly, n_in: int) -> SopTerm:
    return SopTerm(ONE_SCALAR, range(n_in), PhasePoly(), [poly], [BoolPoly.var(i) for i in range(n_in)])


def xor_gadget() -> ZhDiagram:
    """Sum |y1 ⊕ y2><y1, y2|."""
    return sop_to_zh(_map_term(BoolPoly.var(0) ^ BoolPoly.var(1), 2))


def and_gadget() -> ZhDiagram:
    """Sum |y1 y2><y1, y2|."""
    return sop_to_zh(_map_term(BoolPoly.var(0) * BoolPoly.var(1), 2))


def not_gadget() -> ZhDiagram:
    """Sum |1 ⊕ y><y|."""
    return sop_to_zh(_map_term(BoolPoly.const(1) ^ BoolPoly.var(0), 1))


def const_gadget(bit: int) -> ZhDiagram:
    """The state |bit>."""
    return sop_to_zh(SopTerm(ONE_SCALAR, (), PhasePoly(), [BoolPoly.const(bit)], []))


def z_spider(n_in: int, n_out: int) -> ZhDiagram:
    b = _Builder()
    z = b.node("Z")
    b.inputs = [b.port(z) for _ in range(n_in)]
    b.outputs = [b.port(z) for _ in range(n_out)]
    return b.build()


def h_spider(n_in: int, n_out: int, param: HParam = MINUS_ONE) -> ZhDiagram:
    b = _Builder()
    h = b.node("H", param)
    b.inputs = [b.port(h) for _ in range(n_in)]
    b.outputs = [b.port(h) for _ in range(n_out)]
    return b.build()


def ground() -> ZhDiagram:
    b = _Builder()
    g = b.node("G")
    b.inputs = [b.port(g)]
    return b.build()


# -- H parameter decomposition ------------------------------------------------------------------------


def _gadget_values(s: complex, alpha: float, beta: float) -> tuple[complex, complex]:
    """``f(b) = s * sum_z exp(i*alpha*z) * (-1)**(z*b) * exp(i*beta*b)`` at b = 0, 1."""
    e = cmath.exp(1j * alpha)
    return s * (1 + e), s * (1 - e) * cmath.exp(1j * beta)


def decompose_h_param(r: complex) -> tuple[complex, float, float]:
    """Find ``(s, alpha, beta)`` with ``f(0) = 1`` and ``f(1) = r`` for the gadget above.

    The gadget realizes ``r**b`` from a Z phase, an H(-1) and a phase on the
    leg, i.e. a 1->1 H spider with parameter ``r`` up to the fixed leg.
    The closed form built from ``(1-r)/(1+r)`` is tried first; it is kept only
    when the reconstruction matches to 1e-9, else the direct solution
    ``alpha = 2*atan|r|``, ``beta = arg(r) + pi/2`` is used.
    """
    r = complex(r)
    mag = abs(r)
    if math.isclose(mag, 0.0, abs_tol=1e-15) or math.isclose(mag, 1.0, abs_tol=1e-12):
        raise DegenerateParam(f"|r| = {mag} admits no decomposition")
    candidates = []
    q = (1 - r) / (1 + r)
    rho, theta = abs(q), cmath.phase(q)
    alpha0 = 2 * math.atan(rho / 2)
    candidates.append(((1 + r) / (2 * (1 + cmath.exp(1j * alpha0))), alpha0, theta))
    alpha1 = 2 * math.atan(mag)
    candidates.append((1 / (1 + cmath.exp(1j * alpha1)), alpha1, cmath.phase(r) + math.pi / 2))
    for s, alpha, beta in candidates:
        f0, f1 = _gadget_values(s, alpha, beta)
        if abs(f0 - 1) < 1e-9 and abs(f1 - r) < 1e-9:
            return s, alpha, beta
    raise DegenerateParam(f"no decomposition found for r = {r}")  # pragma: no cover


# -- float evaluation ------------------------------------------------------------------------------


def _node_tensor(node: Node) -> np.ndarray:
    shape = (2,) * node.arity
    if node.kind == "Z":
        t = np.zeros(shape, dtype=complex)
        if node.arity == 0:
            return np.array(2.0 + 0j)
        t[(0,) * node.arity] = 1
        t[(1,) * node.arity] = 1
        return t
    if node.kind == "H":
        t = np.ones(shape, dtype=complex)
        r = (node.param or MINUS_ONE).to_complex()
        if node.arity == 0:
            return np.array(r)
        t[(1,) * node.arity] = r
        return t
    raise NotPure("ground nodes need the doubled evaluation")


def _contract(nodes: list[Node], tensors: list[np.ndarray], wires, outputs, inputs) -> np.ndarray:
    label: dict[Port, int] = {}
    nxt = 0
    for a, b in wires:
        label[a] = label[b] = nxt
        nxt += 1
    open_labels = []
    for p in list(outputs) + list(inputs):
        label[p] = nxt
        open_labels.append(nxt)
        nxt += 1
    pool = [(tensors[n], [label[(n, i)] for i in range(node.arity)]) for n, node in enumerate(nodes)]
    res, labels = _contract_pool(pool)
    res = np.transpose(res, [labels.index(x) for x in open_labels]) if open_labels else res
    return np.asarray(res, dtype=complex).reshape(2 ** len(outputs), 2 ** len(inputs))


def _contract_pool(pool: list[tuple[np.ndarray, list[int]]]) -> tuple[np.ndarray, list[int]]:
    # pairwise tensordot, greedily keeping intermediates small; a single einsum
    # call cannot label more than 52 legs
    if not pool:
        return np.array(1.0 + 0j), []
    pool = [_trace_repeated(t, ls) for t, ls in pool]
    while len(pool) > 1:
        best = None
        for i in range(len(pool)):
            for j in range(i + 1, len(pool)):
                shared = set(pool[i][1]) & set(pool[j][1])
                size = len(pool[i][1]) + len(pool[j][1]) - 2 * len(shared)
                key = (not shared, size)
                if best is None or key < best[0]:
                    best = (key, i, j, shared)
        _, i, j, shared = best
        (a, la), (b, lb) = pool[i], pool[j]
        ax_a = [la.index(x) for x in shared]
        ax_b = [lb.index(x) for x in shared]
        t = np.tensordot(a, b, axes=(ax_a, ax_b))
        merged = [x for x in la if x not in shared] + [x for x in lb if x not in shared]
        pool = [p for k, p in enumerate(pool) if k not in (i, j)] + [(t, merged)]
    return pool[0]


def _trace_repeated(t: np.ndarray, ls: list[int]) -> tuple[np.ndarray, list[int]]:
    # a wire joining two legs of the same node is a partial trace
    while len(set(ls)) < len(ls):
        x = next(x for x in ls if ls.count(x) > 1)
        i = ls.index(x)
        j = ls.index(x, i + 1)
        t = np.trace(t, axis1=i, axis2=j)
        ls = [y for k, y in enumerate(ls) if k not in (i, j)]
    return t, ls


def zh_evaluate(d: ZhDiagram) -> np.ndarray:
    """Float matrix of a pure diagram by tensor contraction (rows: outputs, big-endian)."""
    return _contract(d.nodes, [_node_tensor(n) for n in d.nodes], d.wires, d.outputs, d.inputs)


def zh_evaluate_ground(d: ZhDiagram) -> np.ndarray:
    """Float matrix of the doubled diagram: unconjugated copy first, ground nodes become caps."""
    k = len(d.nodes)
    nodes: list[Node] = []
    tensors: list[np.ndarray] = []
    for copy in (0, 1):
        for node in d.nodes:
            if node.kind == "G":
                # an identity with a spare leg, joined to its twin in the other copy
                node = Node("Z", 2)
            t = _node_tensor(node)
            nodes.append(node)
            tensors.append(t if copy == 0 else np.conj(t))
    wires = list(d.wires) + [((a[0] + k, a[1]), (b[0] + k, b[1])) for a, b in d.wires]
    wires += [((n, 1), (n + k, 1)) for n, node in enumerate(d.nodes) if node.kind == "G"]
    outs = list(d.outputs) + [(n + k, i) for n, i in d.outputs]
    ins = list(d.inputs) + [(n + k, i) for n, i in d.inputs]
    return _contract(nodes, tensors, wires, outs, ins)


__all__ = [
    "HParam",
    "MINUS_ONE",
    "Node",
    "ZhDiagram",
    "and_gadget",
    "const_gadget",
    "decompose_h_param",
    "ground",
    "h_spider",
    "not_gadget",
    "simplify",
    "sop_to_zh",
    "xor_gadget",
    "z_spider",
    "zh_evaluate",
    "zh_evaluate_ground",
    "zh_to_sop",
]

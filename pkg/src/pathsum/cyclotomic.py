"""Exact arithmetic in the cyclotomic integers Z[zeta], zeta a primitive 2^L-th root of unity.

With ``N = 2**(L-1)`` the minimal polynomial of ``zeta`` is ``X**N + 1``, so an
element is a length-``N`` integer vector reduced by the rule ``zeta**N = -1``.
Values at different levels are compared after lifting the lower one (index
``i`` moves to ``i * 2**(L'-L)``).

Matrices carry an extra global factor ``sqrt(2)**half_exp``. For ``L >= 3``,
``sqrt(2) = zeta8 + zeta8**-1 = zeta8 - zeta8**3`` can be folded into entries.
"""

from __future__ import annotations

import cmath
import json
from math import gcd

import numpy as np

from .errors import DimensionMismatch, MalformedInput


def _fold(acc: np.ndarray, n: int) -> np.ndarray:
    """Reduce a coefficient vector along the last axis modulo ``X**n + 1``."""
    length = acc.shape[-1]
    if length <= n:
        pad = [(0, 0)] * (acc.ndim - 1) + [(0, n - length)]
        return np.pad(acc, pad)
    out = np.zeros(acc.shape[:-1] + (n,), dtype=acc.dtype)
    sign = 1
    for start in range(0, length, n):
        chunk = acc[..., start : start + n]
        out[..., : chunk.shape[-1]] += sign * chunk
        sign = -sign
    return out


def _lift(coeffs: np.ndarray, level: int, target: int) -> np.ndarray:
    if target == level:
        return coeffs
    step = 1 << (target - level)
    out = np.zeros(coeffs.shape[:-1] + (1 << (target - 1),), dtype=coeffs.dtype)
    out[..., ::step] = coeffs
    return out


def _shift(coeffs: np.ndarray, k: int) -> np.ndarray:
    """Multiply by ``zeta**k`` along the last axis."""
    pad = np.zeros(coeffs.shape[:-1] + (k,), dtype=coeffs.dtype)
    return _fold(np.concatenate([pad, coeffs], axis=-1), coeffs.shape[-1])


def _sqrt2_vector(level: int) -> np.ndarray:
    n = 1 << (level - 1)
    v = np.zeros(n, dtype=np.int64)
    q = 1 << (level - 3)
    v[q] = 1
    v[3 * q] = -1
    return v


def _negacyclic_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n = a.shape[-1]
    full = np.convolve(a, b)
    return _fold(full, n)


class CycInt:
    """An element of Z[zeta_{2^level}] (``level >= 1``)."""

    __slots__ = ("level", "coeffs")

    def __init__(self, level: int, coeffs) -> None:
        if level < 1:
            raise ValueError("level must be at least 1")
        arr = np.asarray(coeffs, dtype=np.int64).reshape(-1)
        n = 1 << (level - 1)
        self.level = level
        self.coeffs = _fold(arr, n) if arr.shape[0] != n else arr.copy()

    @classmethod
    def integer(cls, k: int, level: int = 1) -> CycInt:
        c = np.zeros(1 << (level - 1), dtype=np.int64)
        c[0] = k
        return cls(level, c)

    @classmethod
    def root(cls, level: int, power: int) -> CycInt:
        """``zeta_{2^level} ** power``."""
        n = 1 << (level - 1)
        power %= 2 * n
        c = np.zeros(n, dtype=np.int64)
        if power < n:
            c[power] = 1
        else:
            c[power - n] = -1
        return cls(level, c)

    @classmethod
    def sqrt2(cls, level: int = 3) -> CycInt:
        return cls(max(level, 3), _sqrt2_vector(max(level, 3)))

    def lifted(self, level: int) -> CycInt:
        if level < self.level:
            raise ValueError("cannot lift to a lower level")
        return CycInt(level, _lift(self.coeffs, self.level, level))

    def reduced(self) -> CycInt:
        """Equivalent element at the smallest level that represents it."""
        level, c = self.level, self.coeffs
        while level > 1 and not c[1::2].any():
            c = c[::2]
            level -= 1
        return CycInt(level, c)

    def _unify(self, other: CycInt) -> tuple[np.ndarray, np.ndarray, int]:
        level = max(self.level, other.level)
        return _lift(self.coeffs, self.level, level), _lift(other.coeffs, other.level, level), level

    def __add__(self, other: CycInt) -> CycInt:
        a, b, level = self._unify(other)
        return CycInt(level, a + b)

    def __sub__(self, other: CycInt) -> CycInt:
        a, b, level = self._unify(other)
        return CycInt(level, a - b)

    def __neg__(self) -> CycInt:
        return CycInt(self.level, -self.coeffs)

    def __mul__(self, other: CycInt | int) -> CycInt:
        if isinstance(other, (int, np.integer)):
            return CycInt(self.level, self.coeffs * int(other))
        a, b, level = self._unify(other)
        return CycInt(level, _negacyclic_mul(a, b))

    __rmul__ = __mul__

    def conj(self) -> CycInt:
        c = self.coeffs
        out = np.zeros_like(c)
        out[0] = c[0]
        out[1:] = -c[:0:-1]
        return CycInt(self.level, out)

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = CycInt.integer(other)
        if not isinstance(other, CycInt):
            return NotImplemented
        a, b, _ = self._unify(other)
        return bool(np.array_equal(a, b))

    def __hash__(self) -> int:
        r = self.reduced()
        return hash((r.level, r.coeffs.tobytes()))

    def __complex__(self) -> complex:
        n = self.coeffs.shape[0]
        z = cmath.exp(1j * cmath.pi / n)
        return complex(sum(int(c) * z**i for i, c in enumerate(self.coeffs) if c))

    def to_json(self) -> dict:
        return {"coeffs": [int(c) for c in self.coeffs], "level": self.level}

    @classmethod
    def from_json(cls, obj: dict) -> CycInt:
        try:
            return cls(int(obj["level"]), [int(c) for c in obj["coeffs"]])
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInput(f"malformed cyclotomic integer: {exc}") from exc

    def __repr__(self) -> str:
        return f"CycInt({format_cyc(self)})"

    def __str__(self) -> str:
        return format_cyc(self)


def format_cyc(x: CycInt) -> str:
    """Integer combination of powers of omega = exp(i*pi/4), or of zeta_{2^L} past level 3."""
    r = x.reduced()
    if r.is_zero():
        return "0"
    if r.level <= 3:
        r = r.lifted(3)
        names = {0: "", 1: "ω", 2: "i", 3: "ω^3"}
    else:
        n = 1 << r.level
        names = {0: ""} | {k: f"ζ{n}^{k}" for k in range(1, 1 << (r.level - 1))}
    parts: list[str] = []
    for k, c in enumerate(r.coeffs):
        c = int(c)
        if not c:
            continue
        name = names[k]
        mag = abs(c)
        body = str(mag) if not name else (name if mag == 1 else f"{mag}{name}")
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


class CycMatrix:
    """Dense matrix of cyclotomic integers times ``sqrt(2)**half_exp``.

    ``data`` has shape ``(rows, cols, 2**(level-1))``.
    """

    __slots__ = ("data", "level", "half_exp")

    def __init__(self, data: np.ndarray, level: int, half_exp: int = 0) -> None:
        data = np.asarray(data, dtype=np.int64)
        if data.ndim != 3 or data.shape[2] != 1 << (level - 1):
            raise ValueError(f"data shape {data.shape} does not match level {level}")
        self.data = data
        self.level = level
        self.half_exp = half_exp

    @classmethod
    def zeros(cls, rows: int, cols: int, level: int = 1) -> CycMatrix:
        return cls(np.zeros((rows, cols, 1 << (level - 1)), dtype=np.int64), level)

    @classmethod
    def identity(cls, dim: int, level: int = 1) -> CycMatrix:
        m = cls.zeros(dim, dim, level)
        m.data[np.arange(dim), np.arange(dim), 0] = 1
        return m

    @classmethod
    def from_entries(cls, rows: list[list[CycInt | int]], half_exp: int = 0) -> CycMatrix:
        cells = [[CycInt.integer(e) if isinstance(e, int) else e for e in row] for row in rows]
        level = max((e.level for row in cells for e in row), default=1)
        r, c = len(cells), len(cells[0]) if cells else 0
        data = np.zeros((r, c, 1 << (level - 1)), dtype=np.int64)
        for i, row in enumerate(cells):
            for j, e in enumerate(row):
                data[i, j] = e.lifted(level).coeffs
        return cls(data, level, half_exp)

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape[0], self.data.shape[1]

    def entry(self, i: int, j: int) -> CycInt:
        return CycInt(self.level, self.data[i, j])

    def lifted(self, level: int) -> CycMatrix:
        return CycMatrix(_lift(self.data, self.level, level), level, self.half_exp)

    def _scaled_to(self, half_exp: int) -> tuple[np.ndarray, int]:
        """Entries rescaled so the global factor becomes ``sqrt(2)**half_exp`` (``half_exp <= self.half_exp``)."""
        diff = self.half_exp - half_exp
        data, level = self.data, self.level
        if diff % 2:
            level = max(level, 3)
            data = _lift(data, self.level, level)
            q = 1 << (level - 3)
            data = _shift(data, q) - _shift(data, 3 * q)
        return data * (1 << (diff // 2)), level

    def _aligned(self, other: CycMatrix) -> tuple[np.ndarray, np.ndarray]:
        e = min(self.half_exp, other.half_exp)
        a, la = self._scaled_to(e)
        b, lb = other._scaled_to(e)
        level = max(la, lb)
        return _lift(a, la, level), _lift(b, lb, level)

    def normalized(self) -> CycMatrix:
        """Smallest level, with factors of two moved into ``half_exp``."""
        data, level, e = self.data, self.level, self.half_exp
        while level > 1 and not data[:, :, 1::2].any():
            data = data[:, :, ::2]
            level -= 1
        if data.any():
            while not (data % 2).any():
                data = data // 2
                e += 2
        else:
            e = 0
        return CycMatrix(data, level, e)

    # algebra
    def __matmul__(self, other: CycMatrix) -> CycMatrix:
        if self.shape[1] != other.shape[0]:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        level = max(self.level, other.level)
        a = _lift(self.data, self.level, level)
        b = _lift(other.data, other.level, level)
        n = a.shape[2]
        out = np.zeros((a.shape[0], b.shape[1], 2 * n), dtype=np.int64)
        for i in np.flatnonzero(a.any(axis=(0, 1))):
            ai = a[:, :, i]
            for j in np.flatnonzero(b.any(axis=(0, 1))):
                out[:, :, i + j] += ai @ b[:, :, j]
        return CycMatrix(_fold(out, n), level, self.half_exp + other.half_exp)

    def kron(self, other: CycMatrix) -> CycMatrix:
        level = max(self.level, other.level)
        a = _lift(self.data, self.level, level)
        b = _lift(other.data, other.level, level)
        n = a.shape[2]
        r, c = a.shape[0] * b.shape[0], a.shape[1] * b.shape[1]
        out = np.zeros((r, c, 2 * n), dtype=np.int64)
        for i in np.flatnonzero(a.any(axis=(0, 1))):
            for j in np.flatnonzero(b.any(axis=(0, 1))):
                out[:, :, i + j] += np.kron(a[:, :, i], b[:, :, j])
        return CycMatrix(_fold(out, n), level, self.half_exp + other.half_exp)

    def conj(self) -> CycMatrix:
        d = self.data
        out = np.zeros_like(d)
        out[:, :, 0] = d[:, :, 0]
        out[:, :, 1:] = -d[:, :, :0:-1]
        return CycMatrix(out, self.level, self.half_exp)

    def transpose(self) -> CycMatrix:
        return CycMatrix(self.data.transpose(1, 0, 2).copy(), self.level, self.half_exp)

    def dagger(self) -> CycMatrix:
        return self.conj().transpose()

    def is_zero(self) -> bool:
        return not self.data.any()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CycMatrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        a, b = self._aligned(other)
        return bool(np.array_equal(a, b))

    __hash__ = None  # type: ignore[assignment]

    def to_complex(self) -> np.ndarray:
        n = self.data.shape[2]
        powers = np.exp(1j * np.pi * np.arange(n) / n)
        return (self.data @ powers) * 2 ** (self.half_exp / 2)

    # output
    def to_json(self) -> dict:
        m = self.normalized()
        rows, cols = m.shape
        return {
            "rows": rows,
            "cols": cols,
            "half_exp": m.half_exp,
            "entries": [[m.entry(i, j).to_json() for j in range(cols)] for i in range(rows)],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def from_json(cls, obj: dict) -> CycMatrix:
        try:
            cells = [[CycInt.from_json(e) for e in row] for row in obj["entries"]]
            return cls.from_entries(cells, int(obj.get("half_exp", 0)))
        except (KeyError, TypeError) as exc:
            raise MalformedInput(f"malformed matrix JSON: {exc}") from exc

    def to_text(self) -> str:
        m = self.normalized()
        prefix = scale_str(1, m.half_exp)
        cells = [[format_cyc(m.entry(i, j)) for j in range(m.shape[1])] for i in range(m.shape[0])]
        width = max((len(c) for row in cells for c in row), default=1)
        lines = ["[" + "  ".join(c.rjust(width) for c in row) + "]" for row in cells]
        if prefix != "1":
            lines.insert(0, f"{prefix} *")
        return "\n".join(lines)

    def __repr__(self) -> str:
        return f"CycMatrix({self.shape[0]}x{self.shape[1]}, level={self.level}, half_exp={self.half_exp})"

    def __str__(self) -> str:
        return self.to_text()


def scale_str(odd: int, half_exp: int) -> str:
    if half_exp == 0:
        return str(odd)
    if half_exp < 0:
        return f"{odd}/sqrt(2)^{-half_exp}"
    return f"{odd}*sqrt(2)^{half_exp}"


def format_exact_scalar(m: CycMatrix) -> str:
    """A 1x1 matrix as ``odd/sqrt(2)^k * (entry)`` with the entry's content divided out."""
    if m.shape != (1, 1):
        raise DimensionMismatch(f"expected a 1x1 matrix, got {m.shape}")
    x = m.entry(0, 0).reduced()
    if x.is_zero():
        return "0"
    g = 0
    for c in x.coeffs:
        g = gcd(g, int(c))
    e = m.half_exp
    odd = g
    while odd % 2 == 0:
        odd //= 2
        e += 2
    unit = CycInt(x.level, x.coeffs // g)
    return f"{scale_str(odd, e)} * ({format_cyc(unit)})"

"""Vectorized numpy fallback for the assignment-enumeration kernel."""

from __future__ import annotations

import numpy as np

_CHUNK = 1 << 16


def _parity(sigma: np.ndarray, masks: np.ndarray, offsets: np.ndarray, i: int) -> np.ndarray:
    bit = np.zeros(sigma.shape, dtype=np.int64)
    for m in masks[offsets[i] : offsets[i + 1]]:
        bit ^= ((sigma & m) == m).astype(np.int64)
    return bit


def accumulate(
    nvars: int,
    mon_masks: np.ndarray,
    mon_weights: np.ndarray,
    out_masks: np.ndarray,
    out_offsets: np.ndarray,
    in_masks: np.ndarray,
    in_offsets: np.ndarray,
    level: int,
) -> np.ndarray:
    """Signed counts ``acc[row, col, k]`` of assignments landing on ``zeta**k``.

    ``mon_weights`` are phase numerators over ``2**level``; boolean polynomials
    are given as flattened monomial masks with ``offsets`` delimiting each wire.
    """
    n_out = len(out_offsets) - 1
    n_in = len(in_offsets) - 1
    half = 1 << (level - 1)
    full = 1 << level
    size = (1 << n_out) * (1 << n_in) * half
    acc = np.zeros(size, dtype=np.int64)
    total = 1 << nvars
    for start in range(0, total, _CHUNK):
        sigma = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        e = np.zeros(sigma.shape, dtype=np.int64)
        for m, w in zip(mon_masks, mon_weights):
            e += np.where((sigma & m) == m, w, 0)
        e %= full
        row = np.zeros(sigma.shape, dtype=np.int64)
        for i in range(n_out):
            row = (row << 1) | _parity(sigma, out_masks, out_offsets, i)
        col = np.zeros(sigma.shape, dtype=np.int64)
        for i in range(n_in):
            col = (col << 1) | _parity(sigma, in_masks, in_offsets, i)
        neg = e >= half
        flat = (row * (1 << n_in) + col) * half + np.where(neg, e - half, e)
        acc += np.bincount(flat[~neg], minlength=size)
        acc -= np.bincount(flat[neg], minlength=size)
    return acc.reshape((1 << n_out, 1 << n_in, half))

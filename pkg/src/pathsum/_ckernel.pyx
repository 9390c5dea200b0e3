# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled assignment-enumeration kernel; same contract as the numpy fallback."""

import numpy as np
cimport numpy as cnp

ctypedef cnp.int64_t i64


cdef inline i64 _parity(i64 sigma, const i64[:] masks, const i64[:] offsets, Py_ssize_t i) nogil:
    cdef i64 bit = 0
    cdef Py_ssize_t j
    cdef i64 m
    for j in range(offsets[i], offsets[i + 1]):
        m = masks[j]
        if (sigma & m) == m:
            bit ^= 1
    return bit


def accumulate(int nvars, const i64[:] mon_masks, const i64[:] mon_weights,
               const i64[:] out_masks, const i64[:] out_offsets,
               const i64[:] in_masks, const i64[:] in_offsets, int level):
    cdef Py_ssize_t n_out = out_offsets.shape[0] - 1
    cdef Py_ssize_t n_in = in_offsets.shape[0] - 1
    cdef i64 half = 1 << (level - 1)
    cdef i64 full_mask = (1 << level) - 1
    cdef Py_ssize_t n_mon = mon_masks.shape[0]
    acc_arr = np.zeros((1 << n_out) * (1 << n_in) * half, dtype=np.int64)
    cdef i64[:] acc = acc_arr
    cdef i64 sigma, e, row, col, m
    cdef i64 total = (<i64>1) << nvars
    cdef Py_ssize_t j, i
    with nogil:
        for sigma in range(total):
            e = 0
            for j in range(n_mon):
                m = mon_masks[j]
                if (sigma & m) == m:
                    e += mon_weights[j]
            e &= full_mask
            row = 0
            for i in range(n_out):
                row = (row << 1) | _parity(sigma, out_masks, out_offsets, i)
            col = 0
            for i in range(n_in):
                col = (col << 1) | _parity(sigma, in_masks, in_offsets, i)
            if e >= half:
                acc[(row * (1 << n_in) + col) * half + e - half] -= 1
            else:
                acc[(row * (1 << n_in) + col) * half + e] += 1
    return acc_arr.reshape((1 << n_out, 1 << n_in, half))

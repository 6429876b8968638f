# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled row kernel for coset-type classification.

Same contract as bnhecke._kernels_py.type_keys_product: for each
0-based one-line row x, walk the cycles of the twist of x^{-1} z,
halve the length multiplicities, and pack the stable coset type into
descending 4-bit nibbles of a uint64.
"""

import numpy as np


def type_keys_product(
    const unsigned char[:, ::1] rows,
    const unsigned char[::1] z,
    const unsigned char[::1] zinv,
    unsigned long long[::1] out,
):
    cdef Py_ssize_t N = rows.shape[0]
    cdef int m = <int> rows.shape[1]
    cdef int inv[64]
    cdef int counts[65]
    cdef unsigned char seen[64]
    cdef Py_ssize_t r
    cdef int i, j, start, length, c, shift
    cdef unsigned long long key
    if m > 64:
        raise ValueError("row width exceeds the fixed 64-point buffer")
    if z.shape[0] != m or zinv.shape[0] != m or out.shape[0] != N:
        raise ValueError("mismatched buffer shapes")
    for i in range(m + 1):
        counts[i] = 0
    for r in range(N):
        for i in range(m):
            inv[rows[r, i]] = i
        for i in range(m):
            seen[i] = 0
        key = 0
        shift = 0
        for start in range(m):
            if seen[start]:
                continue
            length = 0
            j = start
            while not seen[j]:
                seen[j] = 1
                j = zinv[rows[r, inv[z[j]] ^ 1]] ^ 1
                length += 1
            counts[length] += 1
        for length in range(m, 0, -1):
            c = counts[length]
            if c:
                counts[length] = 0
                if c & 1:
                    raise AssertionError("odd twist-cycle multiplicity")
                if length > 1:
                    c >>= 1
                    while c:
                        key |= (<unsigned long long> (length - 1)) << shift
                        shift += 4
                        c -= 1
        out[r] = key

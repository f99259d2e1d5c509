# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled cube scan over int64 keys; see _scan_py for the key definition.

The caller guarantees every key fits in int64.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, uint64_t, INT64_MAX

cnp.import_array()


def scan_cube(points, sq, scale, labels, types, int nbits):
    cdef int64_t[:, ::1] P = np.ascontiguousarray(points, dtype=np.int64)
    cdef int64_t[::1] S = np.ascontiguousarray(sq, dtype=np.int64)
    cdef cnp.int8_t[::1] lab = np.ascontiguousarray(labels, dtype=np.int8)
    cdef int64_t[::1] typ = np.ascontiguousarray(
        [t if t is not None else -1 for t in types], dtype=np.int64)
    cdef int K = P.shape[0]
    cdef int N = P.shape[1]
    cdef int64_t two_l = 2 * <int64_t>scale
    cdef int64_t total = (<int64_t>1) << nbits

    out_arg = np.empty(total, dtype=np.int64)
    out_pos = np.empty(total, dtype=np.int64)
    out_neg = np.empty(total, dtype=np.int64)
    out_mask = np.empty(total, dtype=np.uint64)
    cdef int64_t[::1] arg = out_arg
    cdef int64_t[::1] bp = out_pos
    cdef int64_t[::1] bn = out_neg
    cdef uint64_t[::1] msk = out_mask
    cdef int64_t[::1] keys = np.empty(K, dtype=np.int64)

    cdef int64_t v, d, key, best, bpos, bneg
    cdef int a, i, first
    cdef uint64_t mask
    cdef bint has_pos = False, has_neg = False
    for a in range(K):
        if lab[a] == 1:
            has_pos = True
        else:
            has_neg = True

    with nogil:
        for v in range(total):
            best = INT64_MAX
            bpos = INT64_MAX
            bneg = INT64_MAX
            first = 0
            for a in range(K):
                d = 0
                for i in range(N):
                    if (v >> (nbits - 1 - i)) & 1:
                        d = d + P[a, i]
                key = S[a] - two_l * d
                keys[a] = key
                if key < best:
                    best = key
                    first = a
                if lab[a] == 1:
                    if key < bpos:
                        bpos = key
                elif key < bneg:
                    bneg = key
            mask = 0
            for a in range(K):
                if keys[a] == best and typ[a] >= 0:
                    mask = mask | ((<uint64_t>1) << typ[a])
            arg[v] = first
            bp[v] = bpos
            bn[v] = bneg
            msk[v] = mask

    return (
        out_arg.tolist(),
        out_pos.tolist() if has_pos else [None] * total,
        out_neg.tolist() if has_neg else [None] * total,
        out_mask.tolist(),
    )

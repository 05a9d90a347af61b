# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; see ``_pykernels`` for the reference semantics."""

import numpy as np
cimport numpy as cnp

from libc.stdint cimport int64_t

cdef extern from *:
    """
    static inline int qinv_mul_ovf(long long a, long long b, long long *res) {
        return __builtin_mul_overflow(a, b, res);
    }
    static inline int qinv_add_ovf(long long a, long long b, long long *res) {
        return __builtin_add_overflow(a, b, res);
    }
    """
    int qinv_mul_ovf(long long a, long long b, long long *res) nogil
    int qinv_add_ovf(long long a, long long b, long long *res) nogil


def box_points(base, basis, lo, hi, long long qn, lin, long long bound):
    cdef int64_t[:] b0 = np.ascontiguousarray(base, dtype=np.int64)
    cdef int64_t[:, :] B = np.ascontiguousarray(basis, dtype=np.int64)
    cdef int64_t[:] vlo = np.ascontiguousarray(lo, dtype=np.int64)
    cdef int64_t[:] vhi = np.ascontiguousarray(hi, dtype=np.int64)
    cdef int64_t[:] L = np.ascontiguousarray(lin, dtype=np.int64)
    cdef Py_ssize_t k = B.shape[0], r = b0.shape[0]
    cdef Py_ssize_t i, j, m
    cdef long long total = 1
    for i in range(k):
        if vlo[i] > vhi[i]:
            return np.zeros((0, r), dtype=np.int64)
        total *= vhi[i] - vlo[i] + 1
    if k == 0:
        return np.zeros((0, r), dtype=np.int64)

    cdef int64_t[:] a = np.array(vlo, dtype=np.int64)
    cdef int64_t[:, :] rows = np.zeros((k + 1, r), dtype=np.int64)
    for j in range(r):
        rows[0, j] = b0[j]
    for i in range(k):
        for j in range(r):
            rows[i + 1, j] = rows[i, j] + a[i] * B[i, j]

    cap = 1024
    out = np.empty((cap, r), dtype=np.int64)
    cdef int64_t[:, :] o = out
    cdef Py_ssize_t n = 0
    cdef long long q, lv, x
    while True:
        q = 0
        lv = 0
        for j in range(r):
            x = rows[k, j]
            q += x * x
            lv += x * L[j]
        if qn * q + lv <= bound:
            if n == cap:
                cap *= 2
                out = np.resize(out, (cap, r))
                o = out
            for j in range(r):
                o[n, j] = rows[k, j]
            n += 1
        i = k - 1
        while i >= 0 and a[i] == vhi[i]:
            i -= 1
        if i < 0:
            break
        a[i] += 1
        for j in range(r):
            rows[i + 1, j] += B[i, j]
        for m in range(i + 1, k):
            a[m] = vlo[m]
            for j in range(r):
                rows[m + 1, j] = rows[m, j] + a[m] * B[m, j]
    return np.asarray(out[:n]).copy()


def accumulate(points, long long qn, lins, consts, signs, long long emin, Py_ssize_t length):
    cdef int64_t[:, :] P = np.ascontiguousarray(points, dtype=np.int64).reshape(-1, np.shape(lins)[1])
    cdef int64_t[:, :] L = np.ascontiguousarray(lins, dtype=np.int64)
    cdef int64_t[:] C = np.ascontiguousarray(consts, dtype=np.int64)
    cdef int64_t[:] S = np.ascontiguousarray(signs, dtype=np.int64)
    counts = np.zeros(length, dtype=np.int64)
    cdef int64_t[:] cnt = counts
    cdef Py_ssize_t N = P.shape[0], r = P.shape[1], ns = L.shape[0]
    cdef Py_ssize_t i, j, s
    cdef long long q, e, x
    with nogil:
        for i in range(N):
            q = 0
            for j in range(r):
                x = P[i, j]
                q += x * x
            q *= qn
            for s in range(ns):
                e = q + C[s] - emin
                for j in range(r):
                    e += P[i, j] * L[s, j]
                if 0 <= e < length:
                    cnt[e] += S[s]
    return counts


def mul_trunc(a, b, Py_ssize_t n):
    """Truncated convolution in int64; raises OverflowError on overflow."""
    cdef int64_t[:] A = np.asarray(a[:n], dtype=np.int64)
    cdef int64_t[:] Bv = np.asarray(b[:n], dtype=np.int64)
    res = np.zeros(n, dtype=np.int64)
    cdef int64_t[:] out = res
    cdef Py_ssize_t i, j, na = A.shape[0], nb = Bv.shape[0]
    cdef long long t, x, acc
    cdef int bad = 0
    with nogil:
        for i in range(na):
            x = A[i]
            if x == 0:
                continue
            for j in range(nb):
                if i + j >= n:
                    break
                if Bv[j] == 0:
                    continue
                acc = out[i + j]
                if qinv_mul_ovf(x, Bv[j], &t) or qinv_add_ovf(acc, t, &acc):
                    bad = 1
                    break
                out[i + j] = acc
            if bad:
                break
    if bad:
        raise OverflowError("int64 overflow in convolution")
    return [int(v) for v in res]

# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled rank-counting kernels over F_p.

Matrices are flat row-major int64 buffers with entries in [0, p).  ``p`` must
be below 2**31 so products of residues fit in int64.
"""

from libc.stdint cimport int64_t
from libc.stdlib cimport malloc, free
from libc.string cimport memcpy

import numpy as np


cdef inline int64_t _inv_mod(int64_t a, int64_t p) noexcept nogil:
    cdef int64_t t = 0, newt = 1, r = p, newr = a, q, tmp
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


cdef int _rank_inplace(int64_t* a, int rows, int cols, int64_t p, int stop_above) noexcept nogil:
    """Rank of ``a`` (destroyed); returns early once it exceeds ``stop_above``."""
    cdef int r = 0, c, i, j, piv
    cdef int64_t inv, m, x
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if a[i * cols + c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, cols):
                x = a[r * cols + j]
                a[r * cols + j] = a[piv * cols + j]
                a[piv * cols + j] = x
        inv = _inv_mod(a[r * cols + c], p)
        for i in range(r + 1, rows):
            m = a[i * cols + c]
            if m == 0:
                continue
            m = (m * inv) % p
            for j in range(c, cols):
                x = (a[i * cols + j] - m * a[r * cols + j]) % p
                if x < 0:
                    x += p
                a[i * cols + j] = x
        r += 1
        if r > stop_above:
            return r
    return r


def rank_mod_p(const int64_t[::1] mat, int rows, int cols, int64_t p):
    if p >= (<int64_t>1 << 31):
        raise ValueError("modulus too large for the compiled kernel")
    cdef int size = rows * cols
    cdef int64_t* work = <int64_t*> malloc(max(size, 1) * sizeof(int64_t))
    cdef int k, rk
    if work == NULL:
        raise MemoryError()
    try:
        for k in range(size):
            work[k] = ((mat[k] % p) + p) % p
        rk = _rank_inplace(work, rows, cols, p, rows + cols)
    finally:
        free(work)
    return rk


def count_rank_le(const int64_t[:, ::1] coeffs, const int64_t[::1] const_term,
                  int rows, int cols, int64_t p, int bound,
                  int64_t start, int64_t stop):
    """Count points ``x`` with index in ``[start, stop)`` where rank M(x) <= bound.

    Points of F_p^V are indexed in mixed radix, coordinate 0 least significant.
    The matrix is updated incrementally as an odometer over the coordinates.
    """
    if p >= (<int64_t>1 << 31):
        raise ValueError("modulus too large for the compiled kernel")
    cdef int nvars = coeffs.shape[0]
    cdef int size = rows * cols
    if const_term.shape[0] != size or (nvars > 0 and coeffs.shape[1] != size):
        raise ValueError("shape mismatch")
    if stop <= start:
        return 0
    cdef int64_t* cur = <int64_t*> malloc(max(size, 1) * sizeof(int64_t))
    cdef int64_t* work = <int64_t*> malloc(max(size, 1) * sizeof(int64_t))
    cdef int64_t* cf = <int64_t*> malloc(max(nvars * size, 1) * sizeof(int64_t))
    cdef int64_t* digits = <int64_t*> malloc(max(nvars, 1) * sizeof(int64_t))
    cdef int64_t idx, rem, count = 0, x
    cdef int v, k
    if cur == NULL or work == NULL or cf == NULL or digits == NULL:
        free(cur); free(work); free(cf); free(digits)
        raise MemoryError()
    try:
        with nogil:
            for v in range(nvars):
                for k in range(size):
                    cf[v * size + k] = ((coeffs[v, k] % p) + p) % p
            rem = start
            for v in range(nvars):
                digits[v] = rem % p
                rem = rem // p
            for k in range(size):
                x = ((const_term[k] % p) + p) % p
                for v in range(nvars):
                    x = (x + digits[v] * cf[v * size + k]) % p
                cur[k] = x
            idx = start
            while idx < stop:
                memcpy(work, cur, size * sizeof(int64_t))
                if _rank_inplace(work, rows, cols, p, bound) <= bound:
                    count += 1
                idx += 1
                v = 0
                while v < nvars:
                    digits[v] += 1
                    if digits[v] < p:
                        for k in range(size):
                            x = cur[k] + cf[v * size + k]
                            if x >= p:
                                x -= p
                            cur[k] = x
                        break
                    digits[v] = 0
                    for k in range(size):
                        # undo p-1 additions: add one more copy, which is 0 mod p
                        x = cur[k] + cf[v * size + k]
                        if x >= p:
                            x -= p
                        cur[k] = x
                    v += 1
    finally:
        free(cur); free(work); free(cf); free(digits)
    return count


def count_rank_le_points(const int64_t[:, ::1] coeffs, const int64_t[::1] const_term,
                         int rows, int cols, int64_t p, int bound,
                         const int64_t[:, ::1] points):
    """Count rows of ``points`` (each a coordinate vector) where rank M(x) <= bound."""
    if p >= (<int64_t>1 << 31):
        raise ValueError("modulus too large for the compiled kernel")
    cdef int nvars = coeffs.shape[0]
    cdef int size = rows * cols
    cdef Py_ssize_t npts = points.shape[0], t
    if npts and points.shape[1] != nvars:
        raise ValueError("points have the wrong number of coordinates")
    cdef int64_t* work = <int64_t*> malloc(max(size, 1) * sizeof(int64_t))
    cdef int64_t* base = <int64_t*> malloc(max(size, 1) * sizeof(int64_t))
    cdef int64_t* cf = <int64_t*> malloc(max(nvars * size, 1) * sizeof(int64_t))
    cdef int64_t count = 0, x, d
    cdef int v, k
    if work == NULL or base == NULL or cf == NULL:
        free(work); free(base); free(cf)
        raise MemoryError()
    try:
        with nogil:
            for k in range(size):
                base[k] = ((const_term[k] % p) + p) % p
            for v in range(nvars):
                for k in range(size):
                    cf[v * size + k] = ((coeffs[v, k] % p) + p) % p
            for t in range(npts):
                memcpy(work, base, size * sizeof(int64_t))
                for v in range(nvars):
                    d = ((points[t, v] % p) + p) % p
                    if d == 0:
                        continue
                    for k in range(size):
                        work[k] = (work[k] + d * cf[v * size + k]) % p
                if _rank_inplace(work, rows, cols, p, bound) <= bound:
                    count += 1
    finally:
        free(work); free(base); free(cf)
    return count

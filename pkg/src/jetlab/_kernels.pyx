# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled mod-p evaluation kernels (see ``_kernels_py`` for the reference twin)."""

import numpy as np

from libc.stdint cimport int64_t


cdef inline int64_t _eval_poly(const int64_t[:, ::1] exps, const int64_t[::1] coeffs,
                               Py_ssize_t start, Py_ssize_t stop,
                               const int64_t* pt, Py_ssize_t nvars, int64_t p) nogil:
    cdef int64_t acc = 0, val, x
    cdef Py_ssize_t t, v
    cdef int64_t e
    for t in range(start, stop):
        val = coeffs[t]
        for v in range(nvars):
            e = exps[t, v]
            if e:
                x = pt[v]
                while e:
                    val = val * x % p
                    e -= 1
                if val == 0:
                    break
        acc += val
    return acc % p


def common_zeros(const int64_t[:, ::1] exps, const int64_t[::1] coeffs,
                 const int64_t[::1] offsets, const int64_t[:, ::1] points, int64_t p):
    """``mask[k] == 1`` iff every compiled polynomial vanishes mod ``p`` at ``points[k]``."""
    cdef Py_ssize_t n = points.shape[0], nvars = points.shape[1]
    cdef Py_ssize_t npoly = offsets.shape[0] - 1
    out = np.ones(n, dtype=np.uint8)
    cdef unsigned char[::1] mask = out
    cdef Py_ssize_t k, j
    with nogil:
        for k in range(n):
            for j in range(npoly):
                if _eval_poly(exps, coeffs, offsets[j], offsets[j + 1], &points[k, 0], nvars, p) != 0:
                    mask[k] = 0
                    break
    return out


def grid_zeros(const int64_t[:, ::1] exps, const int64_t[::1] coeffs,
               const int64_t[::1] offsets, Py_ssize_t nvars, int64_t p):
    """Flat base-``p`` indices (first variable most significant) of all common zeros in ``F_p^nvars``."""
    cdef Py_ssize_t npoly = offsets.shape[0] - 1
    cdef int64_t total = 1
    cdef Py_ssize_t v, j
    for v in range(nvars):
        total *= p
    pt_arr = np.zeros(max(nvars, 1), dtype=np.int64)
    cdef int64_t[::1] pt = pt_arr
    hits = []
    cdef int64_t idx
    cdef bint ok
    for idx in range(total):
        ok = True
        for j in range(npoly):
            if _eval_poly(exps, coeffs, offsets[j], offsets[j + 1], &pt[0], nvars, p) != 0:
                ok = False
                break
        if ok:
            hits.append(idx)
        # odometer, last variable fastest
        v = nvars - 1
        while v >= 0:
            pt[v] += 1
            if pt[v] < p:
                break
            pt[v] = 0
            v -= 1
    return np.asarray(hits, dtype=np.int64)

# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``bezproj._kernels_py``.

Same signatures, same semantics, same dense outputs. Kept intentionally
small: only the per-point inner loops that dominate quadrature assembly
live here.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def bernstein_matrix(int p, xi):
    """Design matrix of the degree-p Bernstein basis on [-1, 1]."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] x = np.ascontiguousarray(
        xi, dtype=np.float64).ravel()
    cdef Py_ssize_t m = x.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] out = np.empty((m, p + 1))
    cdef cnp.ndarray[cnp.float64_t, ndim=1] binom = np.empty(p + 1)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] hip = np.empty(p + 1)
    cdef Py_ssize_t i, k
    cdef double lo, hi, acc

    binom[0] = 1.0
    for i in range(1, p + 1):
        binom[i] = binom[i - 1] * (p - i + 1) / i
    # running products instead of libm pow: the powers of (1 +- x)/2 are
    # built incrementally, which keeps the inner loop multiply-only
    for k in range(m):
        lo = (1.0 - x[k]) / 2.0
        hi = (1.0 + x[k]) / 2.0
        acc = 1.0
        for i in range(p + 1):
            hip[i] = binom[i] * acc
            acc *= hi
        acc = 1.0
        for i in range(p, -1, -1):
            out[k, i] = hip[i] * acc
            acc *= lo
    return out


def bspline_basis_matrix(knots, int p, xs):
    """Dense B-spline design matrix via the de Boor triangle."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] U = np.ascontiguousarray(
        knots, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] x = np.ascontiguousarray(
        xs, dtype=np.float64).ravel()
    cdef Py_ssize_t n = U.shape[0] - p - 1
    cdef Py_ssize_t m = x.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] out = np.zeros((m, n))
    cdef cnp.ndarray[cnp.float64_t, ndim=1] N = np.empty(p + 1)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] left = np.empty(p + 1)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] right = np.empty(p + 1)
    cdef Py_ssize_t k, j, r, span, lo_idx, hi_idx, mid
    cdef double u, saved, tmp

    for k in range(m):
        u = x[k]
        # span lookup: rightmost index with U[span] <= u, clipped to a
        # nonzero span (half-open lookup, right domain end closed)
        lo_idx = 0
        hi_idx = U.shape[0]
        while lo_idx < hi_idx:
            mid = (lo_idx + hi_idx) // 2
            if U[mid] <= u:
                lo_idx = mid + 1
            else:
                hi_idx = mid
        span = lo_idx - 1
        if span < p:
            span = p
        if span > n - 1:
            span = n - 1

        N[0] = 1.0
        for j in range(1, p + 1):
            left[j] = u - U[span + 1 - j]
            right[j] = U[span + j] - u
            saved = 0.0
            for r in range(j):
                tmp = N[r] / (right[r + 1] + left[j - r])
                N[r] = saved + right[r + 1] * tmp
                saved = left[j - r] * tmp
            N[j] = saved
        for j in range(p + 1):
            out[k, span - p + j] = N[j]
    return out

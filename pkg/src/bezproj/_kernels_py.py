"""Pure numpy implementations of the hot evaluation kernels.

These are the reference implementations; ``bezproj._kernels`` is a
compiled twin with identical signatures and semantics. Both produce
dense design matrices because everything downstream is small dense
linear algebra. No argument validation happens here; callers own that.
"""

import numpy as np


def bernstein_matrix(p, xi):
    """Design matrix of the degree-p Bernstein basis on [-1, 1].

    Returns shape (len(xi), p + 1); row k holds all basis values at
    xi[k]. Points outside the biunit interval are allowed and evaluate
    the polynomial extension.
    """
    x = np.ascontiguousarray(xi, dtype=np.float64).ravel()
    lo = (1.0 - x) / 2.0
    hi = (1.0 + x) / 2.0
    out = np.empty((x.size, p + 1))
    binom = 1.0
    for i in range(p + 1):
        out[:, i] = binom * lo ** (p - i) * hi**i
        binom = binom * (p - i) / (i + 1)
    return out


def bspline_basis_matrix(knots, p, xs):
    """Dense B-spline design matrix via the de Boor triangle.

    knots is an open knot vector (floats, nondecreasing), xs a vector of
    evaluation points inside the parametric domain. Returns shape
    (len(xs), n) with n = len(knots) - p - 1. Span lookup is half-open
    with the right domain end closed.
    """
    U = np.ascontiguousarray(knots, dtype=np.float64)
    x = np.ascontiguousarray(xs, dtype=np.float64).ravel()
    n = U.size - p - 1
    m = x.size
    spans = np.searchsorted(U, x, side="right") - 1
    np.clip(spans, p, n - 1, out=spans)

    # Cox-de Boor recurrence, vectorized over evaluation points. The
    # denominators never vanish because every looked-up span is nonzero.
    N = np.zeros((m, p + 1))
    N[:, 0] = 1.0
    left = np.empty((m, p + 1))
    right = np.empty((m, p + 1))
    for j in range(1, p + 1):
        left[:, j] = x - U[spans + 1 - j]
        right[:, j] = U[spans + j] - x
        saved = np.zeros(m)
        for r in range(j):
            tmp = N[:, r] / (right[:, r + 1] + left[:, j - r])
            N[:, r] = saved + right[:, r + 1] * tmp
            saved = left[:, j - r] * tmp
        N[:, j] = saved

    out = np.zeros((m, n))
    rows = np.arange(m)
    for c in range(p + 1):
        out[rows, spans - p + c] = N[:, c]
    return out

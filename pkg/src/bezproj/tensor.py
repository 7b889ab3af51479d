"""Multi-index bookkeeping and Kronecker assembly for tensor-product bases.

The convention throughout the package: the first parametric direction
cycles fastest. A bivariate local basis function with one-based
univariate indices (i, j) gets the one-based linear index

    a = (p1 + 1) (j - 1) + i

and the matching matrix assembly is the reversed Kronecker product,
kron(A_d, ..., kron(A_2, A_1)). Storage stays zero-based; only the
index maps speak one-based, mirroring the usual spline literature.
"""

from functools import reduce

import numpy as np

__all__ = ["kron", "reversed_kron", "multi_index_2d", "multi_index_3d", "unravel_2d"]


def kron(A, B):
    """Kronecker product, thin wrapper kept for symmetry with reversed_kron."""
    return np.kron(A, B)


def reversed_kron(factors):
    """Kronecker product of the factors in reversed order.

    reversed_kron([A1, A2, A3]) == kron(A3, kron(A2, A1)), which makes
    the first factor's index cycle fastest, matching multi_index_2d.
    A single factor is returned as-is (copied to an array).
    """
    factors = list(factors)
    if not factors:
        raise ValueError("need at least one factor")
    return reduce(lambda acc, f: np.kron(f, acc), factors[1:], np.asarray(factors[0]))


def multi_index_2d(i, j, p1):
    """One-based linear index of the bivariate local function (i, j).

    i runs over 1 .. p1+1 and cycles fastest.
    """
    if not 1 <= i <= p1 + 1:
        raise ValueError(f"index i={i} outside 1..{p1 + 1}")
    if j < 1:
        raise ValueError(f"index j={j} must be >= 1")
    return (p1 + 1) * (j - 1) + i


def multi_index_3d(i, j, k, p1, p2):
    """One-based linear index of the trivariate local function (i, j, k)."""
    if not 1 <= i <= p1 + 1:
        raise ValueError(f"index i={i} outside 1..{p1 + 1}")
    if not 1 <= j <= p2 + 1:
        raise ValueError(f"index j={j} outside 1..{p2 + 1}")
    if k < 1:
        raise ValueError(f"index k={k} must be >= 1")
    return (p1 + 1) * (p2 + 1) * (k - 1) + (p1 + 1) * (j - 1) + i


def unravel_2d(a, p1):
    """Inverse of multi_index_2d: one-based linear index back to (i, j)."""
    if a < 1:
        raise ValueError(f"linear index a={a} must be >= 1")
    j, i0 = divmod(a - 1, p1 + 1)
    return i0 + 1, j + 1

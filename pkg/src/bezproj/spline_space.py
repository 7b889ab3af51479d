"""Tensor-product B-spline and NURBS spaces with element extraction.

A :class:`KnotVector` owns univariate structure (validation, spans,
single knot insertion, extraction to element-local Bernstein form); a
:class:`SplineSpace` is a list of knot vectors plus the tensor-product
bookkeeping; a :class:`ControlNet` carries coefficients and optional
positive weights. Extraction operators C map element-local spline
functions to the Bernstein basis of the element,

    N_A|_e = sum_b C[A, b] B_b,

so spline coefficients P pull back to Bernstein coefficients Q = C^T P,
and the reconstruction operator R = C^{-1} pushes them forward again.

Indexing: arrays are zero-based everywhere in this module. Element and
function ids exposed here are zero-based; the one-based multi-index
helpers in :mod:`bezproj.tensor` exist for the local tensor algebra.
Global function ordering makes the first parametric direction cycle
fastest, matching :func:`bezproj.tensor.reversed_kron`.
"""

import json
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._accel import bspline_basis_matrix
from .tensor import reversed_kron

__all__ = [
    "KnotVector",
    "SplineSpace",
    "ControlNet",
    "Element",
    "ElementOperators",
    "univariate_extraction_exact",
    "parse_number",
    "read_spline_json",
    "write_spline_json",
    "spline_to_dict",
]

# Knots closer than this (relative to the domain span) are snapped to a
# single breakpoint value on construction.
_SNAP_TOL = 1e-12


def _insertion_alphas(U, p, t):
    """Boehm coefficients for inserting t into the open knot vector U.

    Returns (k, alphas) where k is the span index of t and alphas has
    length n + 1 with n = len(U) - p - 1. The old basis relates to the
    new one by N_A = alphas[A] * Nhat_A + (1 - alphas[A + 1]) * Nhat_{A+1}.
    Works for any number type with arithmetic (float, Fraction).
    """
    n = len(U) - p - 1
    k = bisect_right(U, t) - 1
    alphas = []
    for A in range(n + 1):
        if A <= k - p:
            alphas.append(1)
        elif A <= k:
            alphas.append((t - U[A]) / (U[A + p] - U[A]))
        else:
            alphas.append(0)
    return k, alphas


class KnotVector:
    """Open (clamped) univariate knot vector of a given degree.

    Validates on construction: nondecreasing knots, first and last p+1
    entries repeated, interior multiplicities at most p, at least one
    nonzero span, degree at least 1.
    """

    def __init__(self, knots, degree):
        p = int(degree)
        if p < 1:
            raise ValueError(f"degree must be >= 1, got {degree}")
        knots = np.asarray(knots, dtype=np.float64).ravel().copy()
        if knots.size < 2 * (p + 1):
            raise ValueError(
                f"need at least {2 * (p + 1)} knots for degree {p}, got {knots.size}"
            )
        if np.any(np.diff(knots) < 0):
            raise ValueError("knots must be nondecreasing")
        span = knots[-1] - knots[0]
        if span <= 0:
            raise ValueError("knot vector spans an empty domain")

        # cluster near-equal knots so span logic can use exact equality
        for i in range(1, knots.size):
            if knots[i] != knots[i - 1] and knots[i] - knots[i - 1] <= _SNAP_TOL * span:
                knots[i] = knots[i - 1]

        if not (np.all(knots[: p + 1] == knots[0]) and np.all(knots[-p - 1 :] == knots[-1])):
            raise ValueError("knot vector must be open: p+1 repeated end knots")

        breakpoints, counts = np.unique(knots, return_counts=True)
        if np.any(counts[1:-1] > p):
            raise ValueError(f"interior knot multiplicity exceeds degree {p}")
        if counts[0] > p + 1 or counts[-1] > p + 1:
            raise ValueError("boundary knot multiplicity exceeds degree + 1")

        self.knots = knots
        self.knots.flags.writeable = False
        self.degree = p
        self.breakpoints = breakpoints
        self.multiplicities = counts
        self._extraction = None

    @property
    def n(self):
        """Number of basis functions."""
        return self.knots.size - self.degree - 1

    @property
    def domain(self):
        return float(self.knots[0]), float(self.knots[-1])

    @property
    def n_elements(self):
        return self.breakpoints.size - 1

    def __repr__(self):
        return f"KnotVector(degree={self.degree}, n={self.n}, elements={self.n_elements})"

    def __eq__(self, other):
        if not isinstance(other, KnotVector):
            return NotImplemented
        return self.degree == other.degree and np.array_equal(self.knots, other.knots)

    def __hash__(self):
        return hash((self.degree, self.knots.tobytes()))

    def element_bounds(self, e):
        if not 0 <= e < self.n_elements:
            raise IndexError(f"element {e} outside 0..{self.n_elements - 1}")
        return float(self.breakpoints[e]), float(self.breakpoints[e + 1])

    def find_span(self, t):
        """Knot index i with knots[i] <= t < knots[i+1], right end closed."""
        a, b = self.domain
        if t < a or t > b:
            raise ValueError(f"parameter {t} outside domain [{a}, {b}]")
        i = int(np.searchsorted(self.knots, t, side="right")) - 1
        return min(max(i, self.degree), self.n - 1)

    def element_index(self, t):
        """Index of the element containing t (half-open, right end closed)."""
        a, b = self.domain
        if t < a or t > b:
            raise ValueError(f"parameter {t} outside domain [{a}, {b}]")
        e = int(np.searchsorted(self.breakpoints, t, side="right")) - 1
        return min(max(e, 0), self.n_elements - 1)

    def element_support(self, e):
        """Zero-based indices of the p+1 functions supported on element e."""
        a, _ = self.element_bounds(e)
        i = int(np.searchsorted(self.knots, a, side="right")) - 1
        return np.arange(i - self.degree, i + 1)

    def function_support(self, A):
        """Indices of the elements on which function A is nonzero."""
        if not 0 <= A < self.n:
            raise IndexError(f"function {A} outside 0..{self.n - 1}")
        lo, hi = self.knots[A], self.knots[A + self.degree + 1]
        first = int(np.searchsorted(self.breakpoints, lo, side="left"))
        last = int(np.searchsorted(self.breakpoints, hi, side="left")) - 1
        return np.arange(first, last + 1)

    def local_knots(self, A):
        """The p+2 knots defining function A."""
        if not 0 <= A < self.n:
            raise IndexError(f"function {A} outside 0..{self.n - 1}")
        return np.array(self.knots[A : A + self.degree + 2])

    def insert(self, t):
        """Insert one knot at t (strictly inside the domain).

        Returns (new KnotVector, M) where M is (n, n+1) and relates the
        bases by N_old = M @ N_new, so control points map as P_new = M.T P.
        """
        a, b = self.domain
        if not a < t < b:
            raise ValueError(f"insertion point {t} not strictly inside ({a}, {b})")
        U = self.knots
        p = self.degree
        n = self.n
        k, alphas = _insertion_alphas(U.tolist(), p, float(t))
        M = np.zeros((n, n + 1))
        for A in range(n):
            M[A, A] = alphas[A]
            M[A, A + 1] = 1.0 - alphas[A + 1]
        new = KnotVector(np.insert(U, k + 1, t), p)
        return new, M

    def with_inserted(self, values):
        """New knot vector with the given values inserted (no matrix)."""
        U = self.knots
        for t in values:
            a, b = self.domain
            if not a < t < b:
                raise ValueError(f"insertion point {t} not strictly inside ({a}, {b})")
            U = np.insert(U, np.searchsorted(U, t, side="right"), t)
        return KnotVector(U, self.degree)

    def with_removed(self, values):
        """New knot vector with one copy of each listed value removed."""
        U = self.knots.tolist()
        tol = _SNAP_TOL * (self.knots[-1] - self.knots[0])
        for t in values:
            matches = [i for i, u in enumerate(U) if abs(u - t) <= tol]
            interior = [i for i in matches if self.degree < i < len(U) - self.degree - 1]
            if not interior:
                raise ValueError(f"no removable interior knot at {t}")
            del U[interior[0]]
        return KnotVector(U, self.degree)

    def elevated(self, inc=1):
        """Degree-elevated companion: degree + inc, every multiplicity + inc."""
        if inc < 1:
            raise ValueError("elevation increment must be >= 1")
        knots = np.repeat(self.breakpoints, self.multiplicities + inc)
        return KnotVector(knots, self.degree + inc)

    def reduced(self, dec=1):
        """Degree-reduced companion: degree - dec, every multiplicity - dec.

        Breakpoints whose multiplicity drops to zero disappear; the
        continuity class at every surviving breakpoint is preserved.
        """
        if dec < 1:
            raise ValueError("reduction decrement must be >= 1")
        if self.degree - dec < 1:
            raise ValueError(f"cannot reduce degree {self.degree} by {dec}")
        mult = self.multiplicities - dec
        keep = mult > 0
        keep[0] = keep[-1] = True
        knots = np.repeat(self.breakpoints[keep], mult[keep])
        return KnotVector(knots, self.degree - dec)

    def roughened(self, values, inc=1):
        """Raise the multiplicity of listed interior breakpoints by inc."""
        out = self
        for t in values:
            if not np.any(np.isclose(self.breakpoints[1:-1], t, rtol=0, atol=_SNAP_TOL)):
                raise ValueError(f"{t} is not an interior breakpoint")
            out = out.with_inserted([t] * inc)
        return out

    def smoothed(self, values, dec=1):
        """Lower the multiplicity of listed interior breakpoints by dec."""
        out = self
        for t in values:
            out = out.with_removed([t] * dec)
        return out

    def reparameterized(self, new_interior):
        """Move interior breakpoints, keeping count and multiplicities."""
        new_interior = np.asarray(new_interior, dtype=np.float64)
        old_interior = self.breakpoints[1:-1]
        if new_interior.size != old_interior.size:
            raise ValueError(
                f"expected {old_interior.size} interior breakpoints, got {new_interior.size}"
            )
        a, b = self.domain
        if new_interior.size and not (
            np.all(np.diff(new_interior) > 0)
            and new_interior[0] > a
            and new_interior[-1] < b
        ):
            raise ValueError("new interior breakpoints must be strictly increasing inside the domain")
        mult = self.multiplicities.copy()
        bp = self.breakpoints.copy()
        bp[1:-1] = new_interior
        return KnotVector(np.repeat(bp, mult), self.degree)

    def extraction(self):
        """Per-element Bernstein extraction operators.

        Returns a list of (p+1, p+1) matrices, one per element, rows
        ordered by ascending function index, columns by ascending
        Bernstein index. Computed once and cached.
        """
        if self._extraction is None:
            self._extraction = self._compute_extraction()
        return self._extraction

    def _compute_extraction(self):
        p = self.degree
        # M accumulates N_original = M @ N_bezier over repeated insertion
        M = np.eye(self.n)
        work = self
        for t, m in zip(self.breakpoints[1:-1], self.multiplicities[1:-1]):
            for _ in range(p - int(m)):
                work, step = work.insert(t)
                M = M @ step
        ops = []
        for e in range(self.n_elements):
            rows = self.element_support(e)
            cols = np.arange(e * p, e * p + p + 1)
            ops.append(np.ascontiguousarray(M[np.ix_(rows, cols)]))
        return ops


def univariate_extraction_exact(knots, degree):
    """Extraction operators in exact rational arithmetic.

    knots is a sequence of Fractions (or ints); returns a list of
    (p+1) x (p+1) nested lists of Fractions, one per nonzero span. Used
    for bit-exact output when inputs are rational; the float path lives
    on :meth:`KnotVector.extraction`.
    """
    p = int(degree)
    U = [Fraction(u) for u in knots]
    n = len(U) - p - 1
    breakpoints = sorted(set(U))
    mult = {b: U.count(b) for b in breakpoints}

    M = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    work = list(U)
    for t in breakpoints[1:-1]:
        for _ in range(p - mult[t]):
            _, alphas = _insertion_alphas(work, p, t)
            m = len(work) - p - 1
            new = [[Fraction(0)] * (m + 1) for _ in range(n)]
            for r in range(n):
                for c in range(m):
                    if M[r][c]:
                        new[r][c] += M[r][c] * alphas[c]
                        new[r][c + 1] += M[r][c] * (1 - alphas[c + 1])
            M = new
            work.insert(bisect_right(work, t), t)

    spans = [i for i in range(len(U) - 1) if U[i] != U[i + 1]]
    ops = []
    for e, i in enumerate(spans):
        rows = range(i - p, i + 1)
        cols = range(e * p, e * p + p + 1)
        ops.append([[M[r][c] for c in cols] for r in rows])
    return ops


@dataclass(frozen=True)
class Element:
    """One Bezier element of a tensor-product space."""

    index: int
    spans: tuple
    bounds: tuple
    support: np.ndarray

    @property
    def measure(self):
        out = 1.0
        for a, b in self.bounds:
            out *= b - a
        return out

    def map_from_biunit(self, xi):
        """Affine map from [-1, 1]^d to the element, applied row-wise."""
        xi = np.atleast_2d(np.asarray(xi, dtype=np.float64))
        out = np.empty_like(xi)
        for d, (a, b) in enumerate(self.bounds):
            out[:, d] = 0.5 * (a + b) + 0.5 * (b - a) * xi[:, d]
        return out

    def map_to_biunit(self, s):
        """Inverse of :meth:`map_from_biunit`."""
        s = np.atleast_2d(np.asarray(s, dtype=np.float64))
        out = np.empty_like(s)
        for d, (a, b) in enumerate(self.bounds):
            out[:, d] = (2.0 * s[:, d] - a - b) / (b - a)
        return out


@dataclass(frozen=True)
class ElementOperators:
    """Extraction operator of one element with its univariate factors."""

    C: np.ndarray
    factors: tuple


class SplineSpace:
    """Tensor product of univariate open-knot-vector spaces."""

    def __init__(self, knot_vectors):
        kvs = []
        for kv in knot_vectors:
            if not isinstance(kv, KnotVector):
                raise TypeError("SplineSpace expects KnotVector instances")
            kvs.append(kv)
        if not kvs:
            raise ValueError("need at least one knot vector")
        self.knot_vectors = tuple(kvs)
        self._elements = None

    @property
    def parametric_dim(self):
        return len(self.knot_vectors)

    @property
    def degrees(self):
        return tuple(kv.degree for kv in self.knot_vectors)

    @property
    def shape(self):
        """Per-direction function counts."""
        return tuple(kv.n for kv in self.knot_vectors)

    @property
    def n_funcs(self):
        out = 1
        for n in self.shape:
            out *= n
        return out

    @property
    def element_shape(self):
        return tuple(kv.n_elements for kv in self.knot_vectors)

    @property
    def n_elements(self):
        out = 1
        for n in self.element_shape:
            out *= n
        return out

    def __repr__(self):
        return f"SplineSpace(degrees={self.degrees}, shape={self.shape})"

    def __eq__(self, other):
        if not isinstance(other, SplineSpace):
            return NotImplemented
        return self.knot_vectors == other.knot_vectors

    def ravel_func(self, per_dim):
        """Global function index from per-direction indices (zero-based)."""
        a = 0
        for nd, idx in zip(reversed(self.shape), reversed(list(per_dim))):
            a = a * nd + idx
        return a

    def ravel_element(self, per_dim):
        a = 0
        for nd, idx in zip(reversed(self.element_shape), reversed(list(per_dim))):
            a = a * nd + idx
        return a

    def unravel_element(self, e):
        out = []
        for nd in self.element_shape:
            e, r = divmod(e, nd)
            out.append(r)
        out_t = tuple(out)
        if e:
            raise IndexError("element index out of range")
        return out_t

    def elements(self):
        """All elements, first parametric direction cycling fastest."""
        if self._elements is None:
            self._elements = [
                self._build_element(e) for e in range(self.n_elements)
            ]
        return self._elements

    def element(self, e):
        if not 0 <= e < self.n_elements:
            raise IndexError(f"element {e} outside 0..{self.n_elements - 1}")
        return self.elements()[e]

    def _build_element(self, e):
        spans = self.unravel_element(e)
        bounds = tuple(
            kv.element_bounds(k) for kv, k in zip(self.knot_vectors, spans)
        )
        support = None
        for d, (kv, k) in enumerate(zip(self.knot_vectors, spans)):
            win = kv.element_support(k)
            if support is None:
                support = win
            else:
                stride = 1
                for nd in self.shape[:d]:
                    stride *= nd
                support = (stride * win[:, None] + support[None, :]).ravel()
        return Element(index=e, spans=spans, bounds=bounds, support=support)

    def extraction_operator(self, e):
        """Extraction operator of element e.

        Rows follow the element's support ordering (ascending global
        index), columns the tensor Bernstein ordering.
        """
        spans = self.unravel_element(e)
        factors = tuple(
            kv.extraction()[k] for kv, k in zip(self.knot_vectors, spans)
        )
        return ElementOperators(C=reversed_kron(factors), factors=factors)

    def reconstruction_operator(self, e):
        """Inverse extraction operator of element e."""
        ops = self.extraction_operator(e)
        inv_factors = tuple(np.linalg.inv(F) for F in ops.factors)
        return reversed_kron(inv_factors)

    def element_containing(self, s):
        s = np.atleast_1d(np.asarray(s, dtype=np.float64))
        per_dim = tuple(
            kv.element_index(x) for kv, x in zip(self.knot_vectors, s)
        )
        return self.ravel_element(per_dim)

    def eval_basis(self, s):
        """Values of the supported functions at a parametric point.

        Returns (element_index, values) where values follows the
        element's support ordering. The values are nonnegative and sum
        to one.
        """
        s = np.atleast_1d(np.asarray(s, dtype=np.float64))
        if s.shape != (self.parametric_dim,):
            raise ValueError("point dimension mismatch")
        windows = []
        for kv, x in zip(self.knot_vectors, s):
            row = bspline_basis_matrix(kv.knots, kv.degree, [x])[0]
            i = kv.find_span(x)
            windows.append(row[i - kv.degree : i + 1])
        return self.element_containing(s), reversed_kron(windows)

    def local_knot_vector(self, A, d):
        """Local knot vector of global function A in direction d."""
        per_dim = []
        rem = A
        for nd in self.shape:
            rem, r = divmod(rem, nd)
            per_dim.append(r)
        if rem:
            raise IndexError("function index out of range")
        return self.knot_vectors[d].local_knots(per_dim[d])

    def function_elements(self, A):
        """Indices of the elements in the support of global function A."""
        per_dim = []
        rem = A
        for nd in self.shape:
            rem, r = divmod(rem, nd)
            per_dim.append(r)
        if rem:
            raise IndexError("function index out of range")
        grids = [
            kv.function_support(i) for kv, i in zip(self.knot_vectors, per_dim)
        ]
        out = grids[0]
        for d in range(1, len(grids)):
            stride = 1
            for nd in self.element_shape[:d]:
                stride *= nd
            out = (stride * grids[d][:, None] + out[None, :]).ravel()
        return out

    def local_index_of(self, e, A):
        """Position of global function A inside element e's support."""
        sup = self.element(e).support
        hits = np.nonzero(sup == A)[0]
        if hits.size == 0:
            raise ValueError(f"function {A} not supported on element {e}")
        return int(hits[0])


class ControlNet:
    """Control points with optional positive weights."""

    def __init__(self, points, weights=None):
        points = np.asarray(points, dtype=np.float64)
        if points.ndim == 1:
            points = points[:, None]
        if points.ndim != 2:
            raise ValueError("control points must be a 2-D array")
        self.points = points
        if weights is not None:
            weights = np.asarray(weights, dtype=np.float64).ravel()
            if weights.size != points.shape[0]:
                raise ValueError("weight count does not match control point count")
            if np.any(weights <= 0):
                raise ValueError("weights must be positive")
        self.weights = weights

    @property
    def n(self):
        return self.points.shape[0]

    @property
    def physical_dim(self):
        return self.points.shape[1]

    @property
    def is_rational(self):
        return self.weights is not None

    def homogeneous(self):
        """Homogeneous coordinates (w * P, w); plain points if polynomial."""
        if self.weights is None:
            return self.points.copy()
        return np.hstack([self.points * self.weights[:, None], self.weights[:, None]])

    @classmethod
    def from_homogeneous(cls, H, rational):
        H = np.asarray(H, dtype=np.float64)
        if not rational:
            return cls(H)
        w = H[:, -1]
        if np.any(w <= 0):
            raise ValueError("projection produced nonpositive weights")
        return cls(H[:, :-1] / w[:, None], w)


def evaluate(space, net, points):
    """Evaluate the spline (rational if weighted) at parametric points.

    points is (m, d) or a single point; returns (m, physical_dim).
    Points are grouped by containing element and evaluated through the
    element extraction operators, so large batches stay vectorized.
    """
    from ._accel import bernstein_matrix

    pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
    if pts.shape[1] != space.parametric_dim:
        raise ValueError("point dimension mismatch")
    if net.n != space.n_funcs:
        raise ValueError("control net size does not match space dimension")
    H = net.homogeneous()

    e_ids = np.zeros(pts.shape[0], dtype=np.int64)
    stride = 1
    for d, kv in enumerate(space.knot_vectors):
        a, b = kv.domain
        x = pts[:, d]
        if np.any(x < a) or np.any(x > b):
            raise ValueError("evaluation point outside the parametric domain")
        s = np.searchsorted(kv.breakpoints, x, side="right") - 1
        np.clip(s, 0, kv.n_elements - 1, out=s)
        e_ids += stride * s
        stride *= kv.n_elements

    out = np.empty((pts.shape[0], H.shape[1]))
    for e in np.unique(e_ids):
        mask = e_ids == e
        el = space.element(int(e))
        xi = el.map_to_biunit(pts[mask])
        rows = None
        for d, p in enumerate(space.degrees):
            rd = bernstein_matrix(p, xi[:, d])
            if rows is None:
                rows = rd
            else:
                m = rows.shape[0]
                rows = np.einsum("kj,ki->kji", rd, rows).reshape(m, -1)
        C = space.extraction_operator(int(e)).C
        out[mask] = rows @ (C.T @ H[el.support])
    if net.is_rational:
        return out[:, :-1] / out[:, -1:]
    return out


def evaluate_derivative(space, net, points):
    """First derivative of a univariate spline curve at parametric points.

    Only parametric dimension 1 is supported; rational curves use the
    quotient rule on the homogeneous components.
    """
    if space.parametric_dim != 1:
        raise ValueError("derivative evaluation implemented for curves only")
    kv = space.knot_vectors[0]
    p = kv.degree
    U = kv.knots
    H = net.homogeneous()
    n = kv.n

    # hodograph: degree p-1 on the interior knots
    denom = U[p + 1 : p + n] - U[1:n]
    Q = p * (H[1:] - H[:-1]) / denom[:, None]
    dkv = KnotVector(U[1:-1], p - 1)

    pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
    dH = evaluate(SplineSpace([dkv]), ControlNet(Q), pts)
    if not net.is_rational:
        return dH
    val_h = evaluate(SplineSpace([kv]), ControlNet(H), pts)
    w = val_h[:, -1:]
    num = val_h[:, :-1]
    dw = dH[:, -1:]
    dnum = dH[:, :-1]
    return (dnum - (num / w) * dw) / w


def parse_number(x):
    """Parse a JSON scalar that may be an exact rational string 'n/d'."""
    if isinstance(x, str):
        return float(Fraction(x))
    return float(x)


def _space_from_dict(data):
    degrees = data["degrees"]
    kvs = [
        KnotVector([parse_number(u) for u in knots], int(p))
        for knots, p in zip(data["knot_vectors"], degrees)
    ]
    return SplineSpace(kvs)


def read_spline_json(source):
    """Read a spline from a JSON file path, file object, or dict.

    Expected keys: parametric_dim, physical_dim, degrees, knot_vectors,
    control_points, and optionally weights. Numeric entries may be
    rational strings like "1/3".
    """
    if isinstance(source, dict):
        data = source
    elif hasattr(source, "read"):
        data = json.load(source)
    else:
        with open(source) as fh:
            data = json.load(fh)

    space = _space_from_dict(data)
    if int(data["parametric_dim"]) != space.parametric_dim:
        raise ValueError("parametric_dim does not match knot_vectors")
    points = np.array(
        [[parse_number(x) for x in row] for row in data["control_points"]]
    )
    if points.shape[1] != int(data["physical_dim"]):
        raise ValueError("physical_dim does not match control_points")
    weights = None
    if data.get("weights") is not None:
        weights = np.array([parse_number(w) for w in data["weights"]])
    net = ControlNet(points, weights)
    if net.n != space.n_funcs:
        raise ValueError(
            f"control net has {net.n} rows, space needs {space.n_funcs}"
        )
    return space, net


def spline_to_dict(space, net):
    out = {
        "parametric_dim": space.parametric_dim,
        "physical_dim": net.physical_dim,
        "degrees": list(space.degrees),
        "knot_vectors": [kv.knots.tolist() for kv in space.knot_vectors],
        "control_points": net.points.tolist(),
    }
    if net.weights is not None:
        out["weights"] = net.weights.tolist()
    return out


def write_spline_json(path, space, net, extra=None):
    data = spline_to_dict(space, net)
    if extra:
        data.update(extra)
    with open(path, "w") as fh:
        json.dump(data, fh, indent=2)
        fh.write("\n")

"""Discrete and continuous Fréchet distance.

The discrete distance is the O(nm) coupling dynamic program. In rational mode
both curves are scaled onto a common integer grid first, so every comparison
is exact and the value comes back as an exact squared distance.

The continuous decision procedure propagates reachable intervals through the
free-space diagram; the continuous value is found by bisection on it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import _kernels
from .geometry import Curve, GeometryError, Scalar, exact_sqrt, integer_lattice, squared_distance, to_fraction

DEFAULT_TOL = 1e-9

Traversal = tuple  # of (i, j) index pairs


class TraversalError(ValueError):
    pass


@dataclass(frozen=True)
class FrechetResult:
    """Discrete Fréchet distance with a witnessing traversal.

    ``squared`` is exact (a Fraction) for rational curves.
    """

    squared: Scalar
    traversal: Traversal

    @property
    def value(self) -> Scalar:
        return exact_sqrt(self.squared)


@dataclass(frozen=True)
class DistanceBracket:
    lower: float
    upper: float

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def __contains__(self, x) -> bool:
        return self.lower <= x <= self.upper


def _check_pair(P1: Curve, P2: Curve) -> None:
    if P1.dim != P2.dim:
        raise GeometryError(f"dimension mismatch: {P1.dim} vs {P2.dim}")
    if P1.mode != P2.mode:
        raise GeometryError(f"scalar-mode mismatch: {P1.mode} vs {P2.mode}")


def _arrays(P1: Curve, P2: Curve, extra=()):
    """Coordinate arrays for the kernels and the squared-distance scale."""
    if P1.exact:
        (A, B), scale = integer_lattice([P1, P2], extra)
        return A, B, scale * scale
    return P1.as_array(), P2.as_array(), 1


def _py_table(A, B):
    # fallback for coordinates too large for int64
    n, m = len(A), len(B)
    sq = lambda a, b: sum((x - y) * (x - y) for x, y in zip(a, b))
    T = [[0] * m for _ in range(n)]
    T[0][0] = sq(A[0], B[0])
    for j in range(1, m):
        T[0][j] = max(T[0][j - 1], sq(A[0], B[j]))
    for i in range(1, n):
        T[i][0] = max(T[i - 1][0], sq(A[i], B[0]))
        for j in range(1, m):
            T[i][j] = max(min(T[i - 1][j - 1], T[i - 1][j], T[i][j - 1]), sq(A[i], B[j]))
    return np.array(T, dtype=object)


def _table(A, B):
    if A.dtype == object:
        return _py_table(A.tolist(), B.tolist())
    return _kernels.dp_table(A, B)


def _backtrack(T) -> Traversal:
    if T.dtype == object:
        return _py_backtrack(T)
    return tuple(map(tuple, _kernels.backtrack(T).tolist()))


def _py_backtrack(T) -> Traversal:
    i, j = T.shape[0] - 1, T.shape[1] - 1
    steps = [(i, j)]
    while i or j:
        if i == 0:
            j -= 1
        elif j == 0:
            i -= 1
        else:
            # ties: diagonal, then the step that advanced P1, then P2
            cands = ((T[i - 1, j - 1], i - 1, j - 1), (T[i - 1, j], i - 1, j), (T[i, j - 1], i, j - 1))
            best = min(c[0] for c in cands)
            _, i, j = next(c for c in cands if c[0] == best)
        steps.append((i, j))
    steps.reverse()
    return tuple(steps)


def discrete_frechet(P1: Curve, P2: Curve) -> FrechetResult:
    """Discrete Fréchet distance of two curves.

    Returns
    -------
    FrechetResult
        ``squared`` is the exact squared distance in rational mode; the
        traversal is a width-optimal coupling.

    Examples
    --------
    >>> r = discrete_frechet(Curve.of([(0, 0), (1, 0)]), Curve.of([(0, 1), (1, 1)]))
    >>> r.value, r.traversal
    (Fraction(1, 1), ((0, 0), (1, 1)))
    """
    _check_pair(P1, P2)
    A, B, scale2 = _arrays(P1, P2)
    T = _table(A, B)
    top = T[-1, -1]
    if P1.exact:
        squared = Fraction(int(top), scale2)
    else:
        squared = float(top)
    return FrechetResult(squared, _backtrack(T))


def discrete_decision(P1: Curve, P2: Curve, delta, tol: float = DEFAULT_TOL) -> bool:
    """Whether a discrete traversal of width at most ``delta`` exists.

    Rational curves are compared exactly against ``delta**2`` (a float
    ``delta`` is read as its decimal repr) and ``tol`` is ignored. Float
    curves are compared against ``(delta + tol)**2``.
    """
    _check_pair(P1, P2)
    if delta < 0:
        raise ValueError("delta must be non-negative")
    if P1.exact:
        d2 = to_fraction(delta) ** 2
        A, B, scale2 = _arrays(P1, P2, [d2])
        # integer squared distances: D <= d2 * scale2  <=>  D <= floor(...)
        bound = (d2 * scale2).numerator // (d2 * scale2).denominator
        if A.dtype == object:
            return _py_table(A.tolist(), B.tolist())[-1, -1] <= bound
        return bool(_kernels.dp_decide(A, B, np.int64(bound)))
    A, B = P1.as_array(), P2.as_array()
    return bool(_kernels.dp_decide(A, B, (float(delta) + tol) ** 2))


def continuous_decision(P1: Curve, P2: Curve, delta, tol: float = DEFAULT_TOL) -> bool:
    """Whether a continuous traversal of width at most ``delta + tol`` exists.

    Rational curves are converted to double precision. ``tol`` absorbs
    rounding in the free-interval endpoints, which are roots of quadratics.
    """
    _check_pair(P1, P2)
    if delta < 0:
        raise ValueError("delta must be non-negative")
    A, B = P1.as_array(), P2.as_array()
    if not (np.isfinite(A).all() and np.isfinite(B).all()):
        raise GeometryError("non-finite coordinates")
    r = float(delta) + tol
    if len(A) == 1 or len(B) == 1:
        # the farthest point of a polyline from a fixed point is a vertex
        d2 = ((A[:, None, :] - B[None, :, :]) ** 2).sum(axis=2)
        return bool(d2.max() <= r * r)
    return bool(_kernels.free_space_decide(A, B, r))


def continuous_value(P1: Curve, P2: Curve, tol: float = 1e-6, slack: float = 1e-12) -> DistanceBracket:
    """Bracket the continuous Fréchet distance by bisection.

    The search starts from ``[0, max vertex-pair distance]``; ``upper``
    always passes the decision procedure and ``lower`` fails it (or is 0).
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    _check_pair(P1, P2)
    A, B = P1.as_array(), P2.as_array()
    d2 = ((A[:, None, :] - B[None, :, :]) ** 2).sum(axis=2)
    hi = math.sqrt(float(d2.max()))
    lo = math.sqrt(float(max(d2[0, 0], d2[-1, -1])))
    # endpoints are a lower bound on any traversal
    if continuous_decision(P1, P2, lo, tol=slack):
        return DistanceBracket(max(lo - slack, 0.0), lo)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if continuous_decision(P1, P2, mid, tol=slack):
            hi = mid
        else:
            lo = mid
    return DistanceBracket(lo, hi)


def validate_traversal(t: Sequence, n: int, m: int) -> Traversal:
    t = tuple(tuple(s) for s in t)
    if not t:
        raise TraversalError("empty traversal")
    if t[0] != (0, 0) or t[-1] != (n - 1, m - 1):
        raise TraversalError(f"traversal must run from (0, 0) to ({n - 1}, {m - 1})")
    for (i, j), (k, l) in zip(t, t[1:]):
        if (k - i, l - j) not in ((1, 0), (0, 1), (1, 1)):
            raise TraversalError(f"illegal step {(i, j)} -> {(k, l)}")
    return t


def traversal_width(P1: Curve, P2: Curve, t: Sequence, squared: bool = False) -> Scalar:
    """Largest vertex-pair distance visited by a discrete traversal."""
    _check_pair(P1, P2)
    t = validate_traversal(t, len(P1), len(P2))
    w = max(squared_distance(P1[i], P2[j]) for i, j in t)
    return w if squared else exact_sqrt(w)


def cell_count(P1: Curve, P2: Curve) -> int:
    """Number of cells the discrete dynamic program fills."""
    return len(P1) * len(P2)

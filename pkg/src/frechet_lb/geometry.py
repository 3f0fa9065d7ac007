"""Polygonal curves in R^d with exact-rational or floating-point coordinates.

A curve is an immutable vertex list. Parameters run over ``[0, len(curve) - 1]``
with vertex ``i`` at parameter ``i``; a curve parameterized over ``[0, n]``
with 1-based vertices maps to this one by ``t -> t - 1``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

import numpy as np

Scalar = Union[Fraction, float]
Point = tuple

RATIONAL = "rational"
FLOAT = "float"


class GeometryError(ValueError):
    """Raised on dimension or scalar-mode mismatches and out-of-range parameters."""


def to_fraction(x) -> Fraction:
    """Convert ``x`` to an exact rational.

    Floats are read through their shortest decimal repr, so ``1.001`` becomes
    ``1001/1000`` rather than the nearest binary fraction.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise GeometryError(f"non-finite coordinate {x!r}")
        return Fraction(repr(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    raise GeometryError(f"cannot interpret {x!r} as a rational")


def _coerce_point(coords: Iterable, mode: str) -> Point:
    if mode == RATIONAL:
        out = []
        for c in coords:
            if isinstance(c, float):
                raise GeometryError("float coordinate in a rational curve")
            out.append(to_fraction(c))
        return tuple(out)
    out = tuple(float(c) for c in coords)
    if not all(math.isfinite(c) for c in out):
        raise GeometryError("non-finite coordinate")
    return out


def _infer_mode(points: Sequence[Sequence]) -> str:
    has_float = any(isinstance(c, float) for p in points for c in p)
    has_frac = any(isinstance(c, Fraction) for p in points for c in p)
    if has_float and has_frac:
        raise GeometryError("a curve cannot mix exact and floating coordinates")
    return FLOAT if has_float else RATIONAL


@dataclass(frozen=True)
class Curve:
    """Immutable polygonal curve.

    Build with :meth:`Curve.of`, which validates dimensions and coerces the
    coordinates to one scalar mode.
    """

    points: tuple
    mode: str

    @classmethod
    def of(cls, points: Sequence[Sequence], mode: str | None = None) -> "Curve":
        points = list(points)
        if not points:
            raise GeometryError("a curve needs at least one vertex")
        dim = len(points[0])
        if dim < 1:
            raise GeometryError("points need at least one coordinate")
        if any(len(p) != dim for p in points):
            raise GeometryError("all vertices must share one dimension")
        if mode is None:
            mode = _infer_mode(points)
        if mode not in (RATIONAL, FLOAT):
            raise GeometryError(f"unknown scalar mode {mode!r}")
        return cls(tuple(_coerce_point(p, mode) for p in points), mode)

    @property
    def dim(self) -> int:
        return len(self.points[0])

    @property
    def exact(self) -> bool:
        return self.mode == RATIONAL

    def __len__(self) -> int:
        return len(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def __iter__(self):
        return iter(self.points)

    def at(self, t) -> Point:
        return evaluate(self, t)

    def as_array(self) -> np.ndarray:
        """Float coordinates, shape ``(n, d)``; cached and read-only."""
        return self._array

    @cached_property
    def _array(self) -> np.ndarray:
        a = np.array([[float(c) for c in p] for p in self.points], dtype=np.float64).reshape(len(self.points), -1)
        a.flags.writeable = False
        return a

    def to_float(self) -> "Curve":
        if self.mode == FLOAT:
            return self
        return Curve(tuple(tuple(float(c) for c in p) for p in self.points), FLOAT)

    def segment_lengths(self) -> np.ndarray:
        a = self.as_array()
        return np.linalg.norm(np.diff(a, axis=0), axis=1)

    def length(self) -> float:
        return float(self.segment_lengths().sum())

    # -- serialization ----------------------------------------------------
    def to_dict(self) -> dict:
        if self.mode == RATIONAL:
            pts = [[f"{c.numerator}/{c.denominator}" for c in p] for p in self.points]
        else:
            pts = [list(p) for p in self.points]
        return {"dim": self.dim, "mode": self.mode, "points": pts}

    @classmethod
    def from_dict(cls, data: dict) -> "Curve":
        try:
            mode = data["mode"]
            dim = int(data["dim"])
            raw = data["points"]
        except (KeyError, TypeError) as exc:
            raise GeometryError(f"malformed curve record: {exc}") from None
        if mode == RATIONAL:
            pts = [[to_fraction(str(c)) for c in p] for p in raw]
        elif mode == FLOAT:
            pts = [[float(c) for c in p] for p in raw]
        else:
            raise GeometryError(f"unknown scalar mode {mode!r}")
        curve = cls.of(pts, mode)
        if curve.dim != dim:
            raise GeometryError(f"declared dim {dim} but points have dim {curve.dim}")
        return curve

    def dumps(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def loads(cls, text: str) -> "Curve":
        return cls.from_dict(json.loads(text))


def _check_compatible(curves: Sequence[Curve]) -> None:
    dims = {c.dim for c in curves}
    modes = {c.mode for c in curves}
    if len(dims) > 1:
        raise GeometryError(f"dimension mismatch: {sorted(dims)}")
    if len(modes) > 1:
        raise GeometryError(f"scalar-mode mismatch: {sorted(modes)}")


def concat(parts: Sequence[Curve]) -> Curve:
    """Concatenate curves; adjacent endpoints are joined by a segment."""
    parts = list(parts)
    if not parts:
        raise GeometryError("nothing to concatenate")
    _check_compatible(parts)
    pts = tuple(p for c in parts for p in c.points)
    return Curve(pts, parts[0].mode)


def translate_x(curve: Curve, z) -> Curve:
    """Shift every vertex by ``z`` along the first coordinate."""
    z = to_fraction(z) if curve.exact else float(z)
    return Curve(tuple((p[0] + z,) + tuple(p[1:]) for p in curve.points), curve.mode)


def evaluate(curve: Curve, t) -> Point:
    """Point at parameter ``t`` in ``[0, len(curve) - 1]``.

    Integer parameters return the stored vertex unchanged. A rational ``t`` on
    a rational curve gives an exact point.
    """
    n = len(curve)
    if t < 0 or t > n - 1:
        raise GeometryError(f"parameter {t} outside [0, {n - 1}]")
    if curve.exact and not isinstance(t, float):
        t = to_fraction(t)
        i = math.floor(t)
    else:
        t = float(t)
        i = int(math.floor(t))
    lam = t - i
    if lam == 0:
        return curve.points[i]
    p, q = curve.points[i], curve.points[i + 1]
    if not curve.exact or isinstance(lam, float):
        lam = float(lam)
        return tuple((1.0 - lam) * float(a) + lam * float(b) for a, b in zip(p, q))
    return tuple((1 - lam) * a + lam * b for a, b in zip(p, q))


def squared_distance(p: Point, q: Point) -> Scalar:
    if len(p) != len(q):
        raise GeometryError(f"dimension mismatch: {len(p)} vs {len(q)}")
    return sum((a - b) * (a - b) for a, b in zip(p, q))


def exact_sqrt(x: Fraction) -> Scalar:
    """Square root, exact when ``x`` is the square of a rational."""
    if isinstance(x, float):
        return math.sqrt(x)
    num, den = x.numerator, x.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return math.sqrt(num / den)


def distance(p: Point, q: Point) -> Scalar:
    """Euclidean distance; a Fraction when the exact value is rational."""
    return exact_sqrt(squared_distance(p, q))


def integer_lattice(curves: Sequence[Curve], extra: Sequence[Fraction] = ()) -> tuple[list[np.ndarray], int]:
    """Scale rational curves onto a common integer grid.

    Returns the scaled coordinate arrays and the scale ``L``; squared
    distances on the grid are ``L**2`` times the true ones. ``extra``
    rationals contribute their denominators to ``L``. Arrays are int64 when
    every squared distance fits, otherwise Python-int object arrays.
    """
    den = 1
    for c in curves:
        for p in c.points:
            for x in p:
                den = math.lcm(den, x.denominator)
    for x in extra:
        den = math.lcm(den, Fraction(x).denominator)
    arrays = [[[int(x * den) for x in p] for p in c.points] for c in curves]
    big = max(abs(v) for arr in arrays for p in arr for v in p)
    dim = curves[0].dim
    # |a - b| <= 2 * big per coordinate
    fits = dim * (2 * big) ** 2 < 2**62
    dtype = np.int64 if fits else object
    return [np.array(a, dtype=dtype).reshape(len(a), dim) for a in arrays], den

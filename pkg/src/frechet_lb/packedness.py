"""Length of a curve inside balls, and a lower-bound estimate of packedness.

A curve is ``c``-packed when every ball ``B(q, r)`` contains at most ``c r``
of its length. The estimator maximizes ``length-in-ball / r`` over a finite
candidate set of centers and radii, so it always under-reports ``c``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .geometry import Curve, GeometryError

FAST = "fast"
THOROUGH = "thorough"


@njit(cache=True)
def _segment_in_ball(a, u, seg_len, q, r):
    # a: start, u: unit direction, seg_len: length
    s0 = 0.0
    dq2 = 0.0
    for k in range(a.shape[0]):
        diff = q[k] - a[k]
        s0 += diff * u[k]
        dq2 += diff * diff
    h2 = dq2 - s0 * s0
    r2 = r * r
    if h2 > r2:
        return 0.0
    w = np.sqrt(r2 - max(h2, 0.0))
    lo = max(s0 - w, 0.0)
    hi = min(s0 + w, seg_len)
    return hi - lo if hi > lo else 0.0


@njit(cache=True)
def _ball_lengths(starts, units, lens, weights, q, radii):
    out = np.zeros(radii.shape[0])
    for j in range(radii.shape[0]):
        total = 0.0
        for s in range(starts.shape[0]):
            total += weights[s] * _segment_in_ball(starts[s], units[s], lens[s], q, radii[j])
        out[j] = total
    return out


@njit(cache=True)
def _best_ratio(starts, units, lens, weights, centers, radii_per_center, counts):
    best, best_c, best_r = -1.0, -1, 0.0
    for c in range(centers.shape[0]):
        radii = radii_per_center[c, : counts[c]]
        vals = _ball_lengths(starts, units, lens, weights, centers[c], radii)
        for j in range(radii.shape[0]):
            ratio = vals[j] / radii[j]
            # strict comparison keeps the lexicographically first (center, radius)
            if ratio > best:
                best, best_c, best_r = ratio, c, radii[j]
    return best, best_c, best_r


class _Segments:
    """Deduplicated positive-length segments with multiplicities."""

    def __init__(self, curve: Curve):
        a = curve.as_array()
        if len(a) < 2:
            raise GeometryError("curve has no segments")
        p, q = a[:-1], a[1:]
        lens = np.linalg.norm(q - p, axis=1)
        keep = lens > 0
        if not keep.any():
            raise GeometryError("curve has zero length")
        p, q = p[keep], q[keep]
        # orient each segment canonically so reversed duplicates merge
        flip = np.array([tuple(x) > tuple(y) for x, y in zip(p, q)])
        p2 = np.where(flip[:, None], q, p)
        q2 = np.where(flip[:, None], p, q)
        uniq, counts = np.unique(np.hstack([p2, q2]), axis=0, return_counts=True)
        d = uniq.shape[1] // 2
        self.starts = np.ascontiguousarray(uniq[:, :d])
        ends = uniq[:, d:]
        self.lens = np.linalg.norm(ends - self.starts, axis=1)
        self.units = np.ascontiguousarray((ends - self.starts) / self.lens[:, None])
        self.weights = counts.astype(np.float64)
        self.total = float(np.dot(self.lens, self.weights))
        self.min_len = float(self.lens.min())
        self.vertices = np.unique(a, axis=0)
        self.midpoints = np.unique(0.5 * (p + q), axis=0)

    def lengths(self, q, radii) -> np.ndarray:
        return _ball_lengths(self.starts, self.units, self.lens, self.weights,
                             np.asarray(q, dtype=np.float64), np.asarray(radii, dtype=np.float64))


def ball_length(curve: Curve, q, r: float) -> float:
    """Length of ``curve`` inside the closed ball ``B(q, r)``.

    Examples
    --------
    >>> ball_length(Curve.of([(0.0, 0.0), (1.0, 0.0)]), (0.5, 0.0), 0.25)
    0.5
    """
    if not r > 0:
        raise ValueError("radius must be positive")
    a = curve.as_array()
    if len(a) < 2:
        return 0.0
    p, e = a[:-1], a[1:]
    lens = np.linalg.norm(e - p, axis=1)
    keep = lens > 0
    if not keep.any():
        return 0.0
    p, e, lens = p[keep], e[keep], lens[keep]
    units = np.ascontiguousarray((e - p) / lens[:, None])
    return float(_ball_lengths(np.ascontiguousarray(p), units, lens, np.ones(len(lens)),
                               np.asarray(q, dtype=np.float64), np.array([float(r)]))[0])


@dataclass(frozen=True)
class PackednessEstimate:
    value: float
    center: tuple
    radius: float
    num_centers: int
    num_radii: int

    def recheck(self, curve: Curve) -> float:
        return ball_length(curve, self.center, self.radius) / self.radius


def _candidates(seg: _Segments):
    centers = np.vstack([seg.vertices, seg.midpoints])
    extra = np.array([seg.min_len, seg.total / 2, seg.total])
    rows = []
    for c in centers:
        d = np.linalg.norm(seg.vertices - c, axis=1)
        rows.append(np.unique(np.concatenate([d[d > 0], extra])))
    width = max(len(r) for r in rows)
    radii = np.zeros((len(rows), width))
    counts = np.zeros(len(rows), dtype=np.int64)
    for k, r in enumerate(rows):
        radii[k, : len(r)] = r
        counts[k] = len(r)
    return centers, radii, counts


def _refine(seg: _Segments, center: np.ndarray, radius: float, seed: int = 0, samples: int = 400):
    rng = np.random.default_rng(seed)
    dim = center.shape[0]
    if dim <= 3:
        g = np.linspace(-0.5, 0.5, 5) * radius
        offsets = np.stack(np.meshgrid(*([g] * dim), indexing="ij"), axis=-1).reshape(-1, dim)
    else:
        offsets = rng.uniform(-0.5, 0.5, size=(samples, dim)) * radius
    centers = center[None, :] + offsets
    radii = radius * np.linspace(0.5, 1.5, 21)
    R = np.tile(radii, (len(centers), 1))
    counts = np.full(len(centers), len(radii), dtype=np.int64)
    return _best_ratio(seg.starts, seg.units, seg.lens, seg.weights, centers, R, counts), centers


def estimate_packedness(curve: Curve, level: str = FAST) -> PackednessEstimate:
    """Lower bound on the packedness constant of ``curve``.

    Candidate centers are the vertices and segment midpoints. Radii at a
    center are its distances to all vertices plus the shortest segment
    length, half the total length and the total length; all of these scale
    with the curve, so the estimate is scale invariant. ``thorough`` adds a
    local search around the best candidate.
    """
    if level not in (FAST, THOROUGH):
        raise ValueError(f"unknown level {level!r}")
    seg = _Segments(curve)
    centers, radii, counts = _candidates(seg)
    value, ci, r = _best_ratio(seg.starts, seg.units, seg.lens, seg.weights, centers, radii, counts)
    center = centers[ci]
    n_centers, n_radii = len(centers), int(counts.sum())
    if level == THOROUGH:
        (v2, c2, r2), cand = _refine(seg, center, r)
        n_centers += len(cand)
        n_radii += 21 * len(cand)
        if v2 > value:
            value, center, r = v2, cand[c2], r2
    return PackednessEstimate(float(value), tuple(float(x) for x in center), float(r), n_centers, n_radii)

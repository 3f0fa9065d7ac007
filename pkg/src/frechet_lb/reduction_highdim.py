"""Five-dimensional gadgets with packedness ``1 + sqrt(eps) M |A|``.

Side-1 gadget points sit on a radius-``rho`` quarter-circle in the (1,2)-plane,
side-2 points on one in the (3,4)-plane, so every cross pair of circle points
is at distance exactly 1. Satisfaction scales a point by ``1 - 2 eps`` or
``1 + eps``; odd clauses are lifted along the fifth axis by ``8 sqrt(eps) rho``
so clause gadgets of different parity cannot be matched.

Side 1 uses the upper arc ``(-rho cos t, rho sin t)`` for ``t`` in
``[pi/4, 3pi/4)``; that arc stays within distance 1 of ``(0, rho)``, which the
OR composition needs. Ranks ``h`` are 1-based; slot ``(h - 1)(M + 2) + i``
tiles the arc without overrunning it.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .geometry import Curve
from .or_gadget import RHO, PairFamily, bucket_pairs
from .report import VerificationReport
from .sat import CnfFormula, PartialAssignment, VariableSplit, half_split, sat_partial

DIM = 5
DEFAULT_EPS = 1e-4
EPS_MAX = 1e-3  # every grid value at or below passes check_highdim_distances; see eps_max()
TOL = 1e-12


def e5() -> np.ndarray:
    v = np.zeros(DIM)
    v[4] = RHO
    return v


@dataclass(frozen=True)
class HighDimParams:
    eps: float = DEFAULT_EPS
    num_clauses: int = 1
    size1: int = 1
    size2: int = 1

    def __post_init__(self):
        if not 0 < self.eps <= EPS_MAX:
            raise ValueError(f"eps must lie in (0, {EPS_MAX}]")
        if min(self.size1, self.size2, self.num_clauses) < 1:
            raise ValueError("bucket sizes and clause count must be positive")

    @property
    def root(self) -> float:
        return math.sqrt(self.eps)


def angle(h: int, i: int, size: int, m: int) -> float:
    if not 1 <= h <= size:
        raise IndexError(f"rank {h} outside 1..{size}")
    if not 0 <= i <= m + 1:
        raise IndexError(f"slot {i} outside 0..{m + 1}")
    frac = ((h - 1) * (m + 2) + i) / (size * (m + 2))
    return math.pi / 4 + math.pi / 2 * frac


def rot(k: int, h: int, i: int, size: int, m: int) -> np.ndarray:
    """Quarter-circle point of side ``k`` for rank ``h`` (1-based) and slot ``i``."""
    t = angle(h, i, size, m)
    p = np.zeros(DIM)
    if k == 1:
        p[0], p[1] = -RHO * math.cos(t), RHO * math.sin(t)
    elif k == 2:
        p[2], p[3] = RHO * math.sin(t), RHO * math.cos(t)
    else:
        raise ValueError("side must be 1 or 2")
    return p


class Points:
    """Named control and gadget points for fixed ``eps``, ``M`` and bucket sizes."""

    def __init__(self, params: HighDimParams):
        self.p = params
        self.m = params.num_clauses
        self.sizes = {1: params.size1, 2: params.size2}
        self.e5 = e5()

    def rot(self, k, h, i):
        return rot(k, h, i, self.sizes[k], self.m)

    def cg(self, k, h, i, satisfied: bool):
        scale = 1 - 2 * self.p.eps if satisfied else 1 + self.p.eps
        return scale * self.rot(k, h, i) + (i % 2) * 8 * self.p.root * self.e5

    def r(self, k, h):
        return self.rot(k, h, 0) - 8 * self.p.root * self.e5

    def s1(self, h):
        return (1 - 400 * self.p.eps) * self.rot(1, h, 0) + 10 * self.p.root * self.e5

    def t1(self, h):
        return (1 - 400 * self.p.eps) * self.rot(1, h, self.m + 1) - 10 * self.p.root * self.e5

    @property
    def s2(self):
        return np.zeros(DIM)

    t2 = s2

    @property
    def s2_star(self):
        return (1 + 9 * self.p.root) * self.e5

    @property
    def t2_star(self):
        return -(1 + 9 * self.p.root) * self.e5


def _gadget(pts: Points, k: int, h: int, bits: Sequence[bool]) -> list:
    return [pts.r(k, h)] + [pts.cg(k, h, i, b) for i, b in enumerate(bits, start=1)]


def curves_from_bits(bits1: Sequence[Sequence[bool]], bits2: Sequence[Sequence[bool]], eps: float = DEFAULT_EPS) -> tuple[Curve, Curve]:
    """5-D ``(P1, P2)`` from per-assignment satisfaction bits, in rank order."""
    m = len(bits1[0])
    pts = Points(HighDimParams(eps, m, len(bits1), len(bits2)))
    p1 = []
    for h, b in enumerate(bits1, start=1):
        p1 += [pts.s1(h)] + _gadget(pts, 1, h, b) + [pts.t1(h)]
    p2 = [pts.s2, pts.s2_star]
    for h, b in enumerate(bits2, start=1):
        p2 += _gadget(pts, 2, h, b)
    p2 += [pts.t2_star, pts.t2]
    mk = lambda ps: Curve(tuple(tuple(float(x) for x in p) for p in ps), "float")
    return mk(p1), mk(p2)


def build_highdim_pair(phi: CnfFormula, A1: Sequence[PartialAssignment], A2: Sequence[PartialAssignment], eps: float = DEFAULT_EPS) -> tuple[Curve, Curve]:
    if not A1 or not A2:
        raise ValueError("buckets must be non-empty")
    bits = lambda a: [sat_partial(a, c) for c in phi.clauses]
    return curves_from_bits([bits(a) for a in A1], [bits(a) for a in A2], eps)


def packedness_claim(eps: float, m: int, size: int) -> float:
    return 1 + math.sqrt(eps) * m * size


def highdim_pair_family(phi: CnfFormula, ell: int, eps: float = DEFAULT_EPS, split: VariableSplit | None = None) -> PairFamily:
    """Pair family over bucket pairs with ``beta = 1 + eps``.

    ``c`` is the claim for the largest bucket.
    """
    split = split or half_split(phi)
    B1, B2, order = bucket_pairs(split, ell)
    pairs = [build_highdim_pair(phi, B1[j1 - 1], B2[j2 - 1], eps) for j1, j2 in order]
    size = max(len(b) for b in B1 + B2)
    return PairFamily(
        pairs, c=packedness_claim(eps, phi.num_clauses, size), beta=1 + eps, buckets=order,
        params={"ell": ell, "eps": eps, "split": split, "family": "highdim",
                "provenance": {"formula": phi.digest(), "N": phi.num_vars, "M": phi.num_clauses}},
    )


def ell_for_gamma(num_vars: int, num_clauses: int, gamma: float, eps: float = DEFAULT_EPS) -> int:
    """Bucket count ``eps**(1/(2(1+gamma))) * M**(-gamma/(1+gamma)) * 2**((1-gamma)/(1+gamma) * N/2)``.

    Rounded and clamped to ``[1, 2**(N/2)]``. Constant factors are taken as 1.
    """
    if not 0 <= gamma <= 1:
        raise ValueError("gamma must lie in [0, 1]")
    x = (eps ** (1 / (2 * (1 + gamma)))
         * num_clauses ** (-gamma / (1 + gamma))
         * 2 ** ((1 - gamma) / (1 + gamma) * num_vars / 2))
    return int(min(max(round(x), 1), 2 ** (num_vars // 2)))


# -- distance lemma -----------------------------------------------------------

def _families(pts: Points, h1: int, h2: int, bits1, bits2):
    """Yield ``(family, expect, q1, q2)`` with ``expect`` in {'le1', 'gt', 'boundary'}."""
    m = pts.m
    q1 = {"s1": pts.s1(h1), "t1": pts.t1(h1), "r1": pts.r(1, h1)}
    for i in range(1, m + 1):
        q1[f"cg1_{i}"] = pts.cg(1, h1, i, bits1[i - 1])
    q2 = {"s2": pts.s2, "t2": pts.t2, "s2*": pts.s2_star, "t2*": pts.t2_star, "r2": pts.r(2, h2)}
    for i in range(1, m + 1):
        q2[f"cg2_{i}"] = pts.cg(2, h2, i, bits2[i - 1])
    for a, p in q1.items():
        yield "q-s2", "le1", p, q2["s2"]
        yield "q-t2", "le1", p, q2["t2"]
        if a != "s1":
            yield "q-s2*", "gt", p, q2["s2*"]
        if a != "t1":
            yield "q-t2*", "gt", p, q2["t2*"]
    for b, q in q2.items():
        if b != "t2*":
            yield "s1-q", "le1", q1["s1"], q
        if b != "s2*":
            yield "t1-q", "le1", q1["t1"], q
    yield "r1-r2", "le1", q1["r1"], q2["r2"]
    for i in range(1, m + 1):
        yield "r1-cg2", "gt", q1["r1"], q2[f"cg2_{i}"]
        yield "cg1-r2", "gt", q1[f"cg1_{i}"], q2["r2"]
        for j in range(1, m + 1):
            if (i - j) % 2:
                yield "cg-parity", "gt", q1[f"cg1_{i}"], q2[f"cg2_{j}"]
        c1, c2 = q1[f"cg1_{i}"], q2[f"cg2_{i}"]
        if bits1[i - 1] or bits2[i - 1]:
            yield "cg-sat", "le1", c1, c2
        else:
            yield "cg-unsat", "boundary", c1, c2


def check_highdim_distances(eps: float = DEFAULT_EPS, samples: int = 200, seed: int = 0,
                            max_clauses: int = 6, max_size: int = 16, tol: float = TOL) -> VerificationReport:
    """Sample gadget tuples and test every pair family of the 5-D distance table.

    ``le1`` families must be at most ``1 + tol``; ``gt`` families at least
    ``1 + eps - tol``. Unsatisfied same-index clause pairs are reported
    separately as a boundary family equal to ``1 + eps``.
    """
    rng = random.Random(seed)
    worst: dict = {}
    for _ in range(samples):
        m = rng.randint(1, max_clauses)
        s1, s2 = rng.randint(1, max_size), rng.randint(1, max_size)
        pts = Points(HighDimParams(eps, m, s1, s2))
        h1, h2 = rng.randint(1, s1), rng.randint(1, s2)
        b1 = [rng.random() < 0.5 for _ in range(m)]
        b2 = [rng.random() < 0.5 for _ in range(m)]
        for fam, expect, p, q in _families(pts, h1, h2, b1, b2):
            d = float(np.linalg.norm(p - q))
            lo, hi, _ = worst.get(fam, (math.inf, -math.inf, expect))
            worst[fam] = (min(lo, d), max(hi, d), expect)
    rep = VerificationReport("highdim-distances", seed=seed, config={"eps": eps, "samples": samples})
    for fam, (lo, hi, expect) in sorted(worst.items()):
        if expect == "le1":
            rep.add(fam, "distance at most 1", hi <= 1 + tol, max_distance=hi)
        elif expect == "gt":
            rep.add(fam, "distance at least 1 + eps", lo >= 1 + eps - tol, min_distance=lo, margin=lo - 1)
        else:
            rep.add(fam, "distance equals 1 + eps (boundary)", abs(lo - (1 + eps)) <= tol and abs(hi - (1 + eps)) <= tol,
                    min_distance=lo, max_distance=hi)
    return rep


def eps_max(start: float = 1e-3, factor: float = 0.5, floor: float = 1e-8, samples: int = 100) -> float:
    """Largest ``start * factor**k`` passing :func:`check_highdim_distances`."""
    e = start
    while e >= floor:
        if check_highdim_distances(e, samples=samples).ok:
            return e
        e *= factor
    return 0.0


def s1_r2_squared(eps: float) -> float:
    """Closed form of the squared distance between ``s1`` and ``r2``."""
    return RHO ** 2 * ((1 - 400 * eps) ** 2 + 1 + 324 * eps)


def s1_r2_squared_direct(eps: float, m: int = 3, size1: int = 4, size2: int = 4, h1: int = 2, h2: int = 3) -> float:
    pts = Points(HighDimParams(eps, m, size1, size2))
    return float(np.sum((pts.s1(h1) - pts.r(2, h2)) ** 2))


def leading_coefficient(f, eps: float = 1e-7) -> float:
    """First-order coefficient of ``f`` with ``f(0) = 1``; Richardson removes the quadratic term."""
    return (4 * (f(eps) - 1.0) - (f(2 * eps) - 1.0)) / (2 * eps)


def minimal_violation(eps: float, samples: int = 100, seed: int = 0) -> dict:
    """Smallest distance above 1 per violating family kind (in-gadget vs parity)."""
    rep = check_highdim_distances(eps, samples=samples, seed=seed)
    get = lambda name: next(r.witness["min_distance"] for r in rep.records if r.name == name) - 1
    return {"in_gadget": min(get("r1-cg2"), get("cg1-r2")), "parity": get("cg-parity")}


# -- packedness ----------------------------------------------------------------

def _segment_lengths_excluding(curve: Curve, excluded: Sequence[np.ndarray]) -> np.ndarray:
    a = curve.as_array()
    skip = np.zeros(len(a), dtype=bool)
    for e in excluded:
        skip |= np.linalg.norm(a - e, axis=1) < 1e-12
    lens = np.linalg.norm(np.diff(a, axis=0), axis=1)
    keep = ~(skip[:-1] | skip[1:]) & (lens > 0)
    return lens[keep]


def packedness_claim_check(pair: tuple[Curve, Curve], eps: float, m: int, sizes: tuple[int, int],
                           level: str = "fast", slack: float = 8.0) -> VerificationReport:
    """Compare each curve's packedness estimate with ``1 + sqrt(eps) M |A|``.

    Also checks that positive segment lengths, away from ``s2*`` and ``t2*``,
    lie within ``slack`` of ``sqrt(eps) + 1/(M |A|)``, and that every vertex
    lies in the unit ball around the origin.
    """
    from .packedness import estimate_packedness

    rep = VerificationReport("highdim-packedness", config={"eps": eps, "M": m, "sizes": list(sizes), "slack": slack})
    pts = Points(HighDimParams(eps, m, *sizes))
    for k, curve, size in ((1, pair[0], sizes[0]), (2, pair[1], sizes[1])):
        claim = packedness_claim(eps, m, size)
        est = estimate_packedness(curve, level).value
        rep.add(f"P{k}-packedness", f"estimate within [claim/{slack}, {slack} claim]",
                claim / slack <= est <= slack * claim, claimed=claim, estimate=est)
        scale = math.sqrt(eps) + 1 / (m * size)
        lens = _segment_lengths_excluding(curve, [pts.s2_star, pts.t2_star])
        if lens.size:
            rep.add(f"P{k}-segments", "segment lengths within a constant of sqrt(eps) + 1/(M|A|)",
                    scale / slack <= lens.min() and lens.max() <= slack * scale,
                    scale=scale, shortest=float(lens.min()), longest=float(lens.max()))
        norm = float(np.linalg.norm(curve.as_array(), axis=1).max())
        rep.add(f"P{k}-unit-ball", "all vertices within 1 of the origin", norm <= 1 + TOL, max_norm=norm)
    return rep

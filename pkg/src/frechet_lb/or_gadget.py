"""OR-composition of curve pairs through U-shaped connectors.

Given a family of ``ell**2`` curve pairs ``(P1^j, P2^j)`` where every ``P1^j``
fits in the unit ball around ``(0, rho)`` and every ``P2^j`` in the unit ball
around the origin, the composed curves ``R1, R2`` have Fréchet distance at
most 1 when some pair does, and more than ``min(beta, 1.2)`` when every pair
is far apart. Block ``j`` is shifted by ``2 j rho`` along the first axis.

All coordinates are floats since ``rho = 1/sqrt(2)``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .frechet import continuous_decision, discrete_decision, discrete_frechet
from .geometry import Curve, concat, translate_x
from .instance import ReductionInstance
from .report import VerificationReport
from .sat import CnfFormula, PartialAssignment, VariableSplit, enumerate_assignments, half_split, restrict

RHO = 1.0 / math.sqrt(2.0)
DEFAULT_TOL = 1e-9
REJECT_CAP = 1.2


def partition_assignments(A: Sequence, ell: int) -> list[list]:
    """Split ``A`` into ``ell`` contiguous buckets whose sizes differ by at most one.

    Larger buckets come first.
    """
    A = list(A)
    if not 1 <= ell <= len(A):
        raise ValueError(f"ell={ell} outside [1, {len(A)}]")
    q, r = divmod(len(A), ell)
    out, start = [], 0
    for b in range(ell):
        size = q + (b < r)
        out.append(A[start:start + size])
        start += size
    return out


def _pad(pts, dim):
    return tuple(tuple(p) + (0.0,) * (dim - 2) for p in pts)


def u_shapes(j: int, dim: int = 2) -> tuple[Curve, Curve, Curve]:
    """``(U_L(j), U_R(j), U(j))`` with ``U = U_L + U_R``; padded with zeros to ``dim``."""
    if j < 1:
        raise ValueError("j must be positive")
    r = RHO
    left = [(j * r, 0.0), ((j - 1) * r, r), ((j - 1) * r, 3 * r), ((j - 1) * r, 2 * r), ((j - 1) * r, r)]
    right = [((j + 1) * r, r), ((j + 1) * r, 2 * r), ((j + 1) * r, 3 * r), ((j + 1) * r, r), (j * r, 0.0)]
    UL = Curve(_pad(left, dim), "float")
    UR = Curve(_pad(right, dim), "float")
    return UL, UR, concat([UL, UR])


def ball_center(side: int, dim: int) -> np.ndarray:
    c = np.zeros(dim)
    if side == 1:
        c[1] = RHO
    return c


def max_center_distance(curve: Curve, side: int) -> float:
    """Largest vertex distance to the side's ball center (vertices suffice: balls are convex)."""
    a = curve.as_array()
    return float(np.linalg.norm(a - ball_center(side, curve.dim), axis=1).max())


@dataclass
class PairFamily:
    """Curve pairs to compose, with the claimed packedness ``c`` and rejection threshold ``beta``.

    ``buckets`` records, per pair, the bucket indices ``(j1, j2)`` it was built from.
    """

    pairs: list
    c: float
    beta: float
    buckets: list = field(default_factory=list)
    params: dict = field(default_factory=dict)
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        if not self.pairs:
            raise ValueError("empty pair family")
        if self.beta <= 1:
            raise ValueError("beta must exceed 1")
        dims = {c.dim for p in self.pairs for c in p}
        if len(dims) != 1:
            raise ValueError(f"mixed dimensions {sorted(dims)}")
        self.pairs = [(a.to_float(), b.to_float()) for a, b in self.pairs]
        for j, (a, b) in enumerate(self.pairs, start=1):
            d1, d2 = max_center_distance(a, 1), max_center_distance(b, 2)
            if d1 > 1 + self.tol or d2 > 1 + self.tol:
                raise ValueError(f"pair {j} leaves its unit ball ({d1:.6f}, {d2:.6f})")

    @property
    def dim(self) -> int:
        return self.pairs[0][0].dim

    def __len__(self):
        return len(self.pairs)


def build_or_curves(family: PairFamily, kind: str = "or_packed") -> ReductionInstance:
    """Compose ``R1, R2`` from a pair family.

    ``|R1| = sum(|P1^j| + 10)`` and ``|R2| = 10 + sum(|P2^j| + 10)``.
    """
    dim = family.dim
    r1, r2 = [], [u_shapes(1, dim)[2]]
    for j, (P1, P2) in enumerate(family.pairs, start=1):
        UL, UR, _ = u_shapes(2 * j, dim)
        shift = 2 * j * RHO
        r1 += [UL, translate_x(P1, shift), UR]
        r2 += [translate_x(P2, shift), u_shapes(2 * j + 1, dim)[2]]
    params = dict(family.params)
    params.update(c=family.c, beta=family.beta, pairs=len(family))
    return ReductionInstance(
        concat(r1), concat(r2), kind, params=params,
        split=family.params.get("split"), accept=1.0, reject=min(family.beta, REJECT_CAP),
        provenance=dict(family.params.get("provenance", {})),
    )


def extract_block(R1: Curve, family: PairFamily, j: int) -> Curve:
    """Block ``j`` of ``R1`` with its U-shapes removed and its shift undone."""
    start = sum(len(p[0]) + 10 for p in family.pairs[: j - 1]) + 5
    pts = R1.points[start:start + len(family.pairs[j - 1][0])]
    return translate_x(Curve(pts, R1.mode), -2 * j * RHO)


def ell_for_gamma(num_vars: int, gamma: float) -> int:
    """Bucket count ``2**((1-gamma)/(1+gamma) * N/2)`` rounded and clamped to ``[1, 2**(N/2)]``."""
    if not 0 <= gamma <= 1:
        raise ValueError("gamma must lie in [0, 1]")
    hi = 2 ** (num_vars // 2)
    ell = round(2 ** ((1 - gamma) / (1 + gamma) * num_vars / 2))
    return int(min(max(ell, 1), hi))


def bucket_pairs(split: VariableSplit, ell: int) -> tuple[list, list, list]:
    """Buckets of both sides and the pair order ``j = (j1 - 1) ell + j2``."""
    B1 = partition_assignments(enumerate_assignments(split.v1), ell)
    B2 = partition_assignments(enumerate_assignments(split.v2), ell)
    order = [(j1, j2) for j1 in range(1, ell + 1) for j2 in range(1, ell + 1)]
    return B1, B2, order


def plane_pair_family(phi: CnfFormula, ell: int, split: VariableSplit | None = None) -> PairFamily:
    """Pair family from the planar construction on bucket pairs, ``beta = 1.001``."""
    from .reduction_plane import DEFAULT_CONSTANTS, build_plane_curves

    split = split or half_split(phi)
    B1, B2, order = bucket_pairs(split, ell)
    pairs = []
    for j1, j2 in order:
        inst = build_plane_curves(phi, split, B1[j1 - 1], B2[j2 - 1])
        pairs.append((inst.P1, inst.P2))
    c = phi.num_clauses * 2 ** (phi.num_vars / 2) / ell
    return PairFamily(
        pairs, c=c, beta=float(1 + DEFAULT_CONSTANTS.eps), buckets=order,
        params={"ell": ell, "split": split, "family": "plane",
                "provenance": {"formula": phi.digest(), "N": phi.num_vars, "M": phi.num_clauses}},
    )


def witness_pair_index(family: PairFamily, values: dict) -> int:
    """1-based index of the pair whose buckets contain the split of a full assignment."""
    split = family.params["split"]
    a1, a2 = restrict(values, split.v1), restrict(values, split.v2)
    B1, B2, order = bucket_pairs(split, family.params["ell"])
    j1 = next(k for k, b in enumerate(B1, 1) if a1 in b)
    j2 = next(k for k, b in enumerate(B2, 1) if a2 in b)
    return order.index((j1, j2)) + 1


def _random_region(rng: random.Random, x0: float, y0: float, sx: int, count: int, dim: int) -> Curve:
    # points with sx*(x - x0) >= 0 and y >= y0
    pts = [(x0 + sx * rng.uniform(0, 2), y0 + rng.uniform(0, 2)) for _ in range(count)]
    return Curve(_pad(pts, dim), "float")


def _random_free(rng: random.Random, count: int, dim: int) -> Curve:
    return Curve(tuple(tuple(rng.uniform(-2, 2) for _ in range(dim)) for _ in range(count)), "float")


def check_property_pg(
    family: PairFamily,
    phi: CnfFormula,
    sat_oracle: Callable[[CnfFormula], dict | None],
    samples: int = 20,
    seed: int = 0,
    packedness: Callable[[Curve], float] | None = None,
    slack: float = 8.0,
    mode: str = "continuous",
) -> VerificationReport:
    """Check the five family properties the composition relies on.

    Rejection under arbitrary prefixes and suffixes is sampled: side-1
    prefixes stay left of and above ``(-rho, rho)``, suffixes right of and
    above ``(rho, rho)``; side-2 pieces are unconstrained. ``mode`` selects
    the Fréchet variant used for that check.
    """
    if mode not in ("continuous", "discrete"):
        raise ValueError(f"unknown mode {mode!r}")
    decide = continuous_decision if mode == "continuous" else discrete_decision
    rep = VerificationReport("property-pg", seed=seed, config={"samples": samples, "beta": family.beta, "mode": mode})
    witness = sat_oracle(phi)
    tol = family.tol
    if witness is not None:
        j = witness_pair_index(family, witness)
        P1, P2 = family.pairs[j - 1]
        val = float(discrete_frechet(P1, P2).value)
        rep.add("pg-i", "some pair has discrete distance at most 1", val <= 1 + tol, pair=j, value=val)
    else:
        rng = random.Random(seed)
        bad = []
        reject = family.beta - 1e-6
        for _ in range(samples):
            j = rng.randrange(len(family)) + 1
            P1, P2 = family.pairs[j - 1]
            n = lambda: rng.randint(0, 3)
            C1 = concat([c for c in (_random_region(rng, -RHO, RHO, -1, n(), family.dim), P1,
                                     _random_region(rng, RHO, RHO, 1, n(), family.dim)) if len(c)])
            C2 = concat([c for c in (_random_free(rng, n(), family.dim), P2, _random_free(rng, n(), family.dim)) if len(c)])
            if decide(C1, C2, reject, tol=tol):
                bad.append({"pair": j, "C1": C1.points, "C2": C2.points})
        rep.add("pg-ii", "unsat pairs exceed beta under constrained prefixes and suffixes", not bad,
                delta=reject, violations=bad[:3])
    if packedness is not None:
        est = [packedness(c) for p in family.pairs for c in p]
        lo, hi = min(est), max(est)
        rep.add("pg-iii", f"pair packedness within [c/{slack}, {slack}c]",
                family.c / slack <= lo and hi <= slack * family.c, c=family.c, low=lo, high=hi)
    d1 = max(max_center_distance(p[0], 1) for p in family.pairs)
    d2 = max(max_center_distance(p[1], 2) for p in family.pairs)
    rep.add("pg-iv", "side-1 curves within 1 of (0, rho)", d1 <= 1 + tol, max_distance=d1)
    rep.add("pg-v", "side-2 curves within 1 of the origin", d2 <= 1 + tol, max_distance=d2)
    return rep


def expected_or_sizes(family: PairFamily) -> tuple[int, int]:
    return (sum(len(a) + 10 for a, _ in family.pairs),
            10 + sum(len(b) + 10 for _, b in family.pairs))

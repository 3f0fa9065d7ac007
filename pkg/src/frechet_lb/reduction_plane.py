"""Planar CNF-SAT to Fréchet reduction with exact rational coordinates.

Each partial assignment becomes an assignment gadget: a sync point ``r_k``
followed by one point per clause. The point's x-slot alternates with clause
parity and its y-level moves toward the other curve when the assignment
satisfies the clause. Curve ``P1`` wraps each gadget of side 1 in control
points ``s1``/``t1``; ``P2`` brackets all gadgets of side 2 with
``s2, s2*`` and ``t2*, t2``. With ``eps = 1/1000`` the discrete and
continuous Fréchet distances are at most 1 when the formula is satisfiable
and exceed ``1 + eps`` otherwise.

Clause indices are 1-based throughout so parity matches ``i mod 2``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .frechet import discrete_decision
from .geometry import Curve, GeometryError, Point, concat, evaluate, squared_distance
from .instance import ReductionInstance
from .report import VerificationReport
from .sat import (
    CnfFormula,
    PartialAssignment,
    VariableSplit,
    enumerate_assignments,
    half_split,
    sat_partial,
    split_variables,
)

F = Fraction
EPS = F(1, 1000)


@dataclass(frozen=True)
class GadgetConstants:
    eps: Fraction = EPS

    def clause_point(self, k: int, parity: int, satisfied: bool) -> Point:
        y = F(1, 2) - self.eps if satisfied else F(1, 2) + self.eps
        return (F(parity, 3), y if k == 1 else -y)

    @property
    def r1(self):
        return (F(-1, 3), F(1, 2))

    @property
    def r2(self):
        return (F(-1, 3), F(-1, 2))

    @property
    def s1(self):
        return (F(-1, 3), F(1, 5))

    @property
    def t1(self):
        return (F(1, 3), F(1, 5))

    @property
    def s2(self):
        return (F(-1, 3), F(0))

    @property
    def t2(self):
        return (F(1, 3), F(0))

    @property
    def s2_star(self):
        return (F(-1, 3), F(-4, 5))

    @property
    def t2_star(self):
        return (F(1, 3), F(-4, 5))

    def q1(self) -> dict:
        pts = {"s1": self.s1, "t1": self.t1, "r1": self.r1}
        for i in (0, 1):
            for x in (True, False):
                pts[f"c1{'T' if x else 'F'}{i}"] = self.clause_point(1, i, x)
        return pts

    def q2(self) -> dict:
        pts = {"s2": self.s2, "t2": self.t2, "r2": self.r2, "s2*": self.s2_star, "t2*": self.t2_star}
        for i in (0, 1):
            for x in (True, False):
                pts[f"c2{'T' if x else 'F'}{i}"] = self.clause_point(2, i, x)
        return pts


DEFAULT_CONSTANTS = GadgetConstants()


def satisfaction_bits(phi: CnfFormula, a: PartialAssignment) -> tuple:
    return tuple(sat_partial(a, c) for c in phi.clauses)


def clause_gadget(phi: CnfFormula, a: PartialAssignment, k: int, i: int, consts: GadgetConstants = DEFAULT_CONSTANTS) -> Point:
    """Clause-gadget point for clause ``i`` (1-based) on side ``k``."""
    if not 1 <= i <= phi.num_clauses:
        raise IndexError(f"clause index {i} outside 1..{phi.num_clauses}")
    if k not in (1, 2):
        raise ValueError("side must be 1 or 2")
    return consts.clause_point(k, i % 2, sat_partial(a, phi.clauses[i - 1]))


def gadget_from_bits(bits: Sequence[bool], k: int, consts: GadgetConstants = DEFAULT_CONSTANTS) -> Curve:
    """Assignment gadget from per-clause satisfaction bits (clause 1 first)."""
    r = consts.r1 if k == 1 else consts.r2
    pts = [r] + [consts.clause_point(k, i % 2, b) for i, b in enumerate(bits, start=1)]
    return Curve(tuple(pts), "rational")


def assignment_gadget(phi: CnfFormula, a: PartialAssignment, k: int, consts: GadgetConstants = DEFAULT_CONSTANTS) -> Curve:
    return gadget_from_bits(satisfaction_bits(phi, a), k, consts)


def curves_from_bits(bits1: Sequence[Sequence[bool]], bits2: Sequence[Sequence[bool]], consts: GadgetConstants = DEFAULT_CONSTANTS) -> tuple[Curve, Curve]:
    """Build ``(P1, P2)`` from satisfaction-bit vectors of each side's assignments."""
    if not bits1 or not bits2:
        raise ValueError("both sides need at least one assignment")
    pt = lambda p: Curve((p,), "rational")
    P1 = concat([piece for b in bits1 for piece in (pt(consts.s1), gadget_from_bits(b, 1, consts), pt(consts.t1))])
    P2 = concat(
        [pt(consts.s2), pt(consts.s2_star)]
        + [gadget_from_bits(b, 2, consts) for b in bits2]
        + [pt(consts.t2_star), pt(consts.t2)]
    )
    return P1, P2


def build_plane_curves(
    phi: CnfFormula,
    split: VariableSplit | None = None,
    A1: Sequence[PartialAssignment] | None = None,
    A2: Sequence[PartialAssignment] | None = None,
    consts: GadgetConstants = DEFAULT_CONSTANTS,
    kind: str = "plane",
) -> ReductionInstance:
    """Planar reduction instance.

    ``A1``/``A2`` default to all assignments of the split halves; subsets
    (buckets) are allowed. ``|P1| = |A1| (M + 3)`` and
    ``|P2| = |A2| (M + 1) + 4``.
    """
    split = split or half_split(phi)
    A1 = enumerate_assignments(split.v1) if A1 is None else list(A1)
    A2 = enumerate_assignments(split.v2) if A2 is None else list(A2)
    if not A1 or not A2:
        raise ValueError("assignment lists must be non-empty")
    P1, P2 = curves_from_bits(
        [satisfaction_bits(phi, a) for a in A1], [satisfaction_bits(phi, a) for a in A2], consts
    )
    return ReductionInstance(
        P1,
        P2,
        kind,
        params={"eps": consts.eps, "ell": split.ell, "A1": len(A1), "A2": len(A2)},
        split=split,
        accept=F(1),
        reject=1 + consts.eps,
        provenance={"formula": phi.digest(), "N": phi.num_vars, "M": phi.num_clauses},
    )


def build_imbalanced(phi: CnfFormula, gamma, consts: GadgetConstants = DEFAULT_CONSTANTS) -> ReductionInstance:
    """Planar reduction on the split ``ell = N / (gamma + 1)``."""
    split = split_variables(phi, gamma)
    inst = build_plane_curves(phi, split, consts=consts, kind="imbalanced")
    inst.params["gamma"] = gamma
    return inst


# -- symmetric points --------------------------------------------------------

def locate(curve: Curve, p: Point):
    """Smallest parameter at which ``curve`` passes through ``p`` (exact), or None."""
    for i, (a, b) in enumerate(zip(curve.points, curve.points[1:])):
        d = [y - x for x, y in zip(a, b)]
        w = [y - x for x, y in zip(a, p)]
        dd = sum(c * c for c in d)
        if dd == 0:
            if all(c == 0 for c in w):
                return F(i)
            continue
        lam = sum(x * y for x, y in zip(w, d)) / dd
        if 0 <= lam <= 1 and all(wk == lam * dk for wk, dk in zip(w, d)):
            return i + lam
    if curve.points[-1] == tuple(p):
        return F(len(curve) - 1)
    return None


def sym(p: Point, ag1: Curve, ag2: Curve) -> Point:
    """Point on the opposite assignment gadget at the same curve parameter."""
    if len(ag1) != len(ag2):
        raise GeometryError("assignment gadgets must have equal length")
    t = locate(ag1, p)
    if t is not None:
        return evaluate(ag2, t)
    t = locate(ag2, p)
    if t is not None:
        return evaluate(ag1, t)
    raise GeometryError(f"point {p} lies on neither gadget")


# -- lemma checkers -----------------------------------------------------------

def expected_close_pairs(consts: GadgetConstants = DEFAULT_CONSTANTS) -> set:
    """Name pairs of Q1 x Q2 that should be within distance 1."""
    q1, q2 = consts.q1(), consts.q2()
    out = set()
    for a in q1:
        out.add((a, "s2"))
        out.add((a, "t2"))
    out |= {("s1", b) for b in q2 if b != "t2*"}
    out |= {("t1", b) for b in q2 if b != "s2*"}
    out.add(("r1", "r2"))
    for i in (0, 1):
        for x in "TF":
            for y in "TF":
                if "T" in (x, y):
                    out.add((f"c1{x}{i}", f"c2{y}{i}"))
    return out


def _table_holds(consts: GadgetConstants) -> tuple[list, set, set]:
    q1, q2 = consts.q1(), consts.q2()
    lo, hi = F(1), (1 + consts.eps) ** 2
    gap_violations, close = [], set()
    for a, pa in q1.items():
        for b, pb in q2.items():
            d2 = squared_distance(pa, pb)
            if lo < d2 <= hi:
                gap_violations.append((a, b, d2))
            if d2 <= 1:
                close.add((a, b))
    expected = expected_close_pairs(consts)
    return gap_violations, close - expected, expected - close


def check_distance_table(consts: GadgetConstants = DEFAULT_CONSTANTS) -> VerificationReport:
    """Exhaustive exact check of all 7 x 9 control/gadget point pairs."""
    rep = VerificationReport("distance-table", config={"eps": consts.eps})
    gap, extra, missing = _table_holds(consts)
    rep.add("no-distance-in-gap", "no pair at distance in (1, 1+eps]", not gap, violations=gap)
    rep.add("close-set-exact", "pairs within 1 are exactly the five families", not extra and not missing,
            extra=sorted(extra), missing=sorted(missing))
    rep.add("pair-count", "63 pairs enumerated", len(consts.q1()) * len(consts.q2()) == 63)
    return rep


def max_valid_epsilon(step: Fraction = F(1, 10000), limit: Fraction = F(1, 20)) -> Fraction:
    """Largest grid ``eps`` such that the distance table holds for every grid value up to it."""
    best = F(0)
    e = step
    while e <= limit:
        gap, extra, missing = _table_holds(GadgetConstants(e))
        if gap or extra or missing:
            break
        best = e
        e += step
    return best


def _random_bits(rng: random.Random, m: int) -> tuple:
    return tuple(rng.random() < 0.5 for _ in range(m))


def _random_param(rng: random.Random, hi: int, den: int = 997) -> Fraction:
    return F(rng.randrange(0, hi * den + 1), den)


def check_sym_lemma(samples: int = 10_000, seed: int = 0, consts: GadgetConstants = DEFAULT_CONSTANTS, max_clauses: int = 6) -> VerificationReport:
    """Sample close point pairs on random gadget pairs and test the 1/9 bound.

    Pairs are drawn with nearby parameters so most land within ``1 + eps``;
    only those within ``1 + eps`` count toward ``samples``.
    """
    if samples < 1:
        raise ValueError("samples must be positive")
    rng = random.Random(seed)
    bound = F(1, 81)
    close = (1 + consts.eps) ** 2
    accepted = tries = 0
    violations = []
    while accepted < samples:
        tries += 1
        m = rng.randint(1, max_clauses)
        ag1 = gadget_from_bits(_random_bits(rng, m), 1, consts)
        ag2 = gadget_from_bits(_random_bits(rng, m), 2, consts)
        t1 = _random_param(rng, m)
        if rng.random() < 0.25:
            t2 = _random_param(rng, m)
        else:
            t2 = min(max(t1 + F(rng.randrange(-200, 201), 1000), F(0)), F(m))
        p1, p2 = evaluate(ag1, t1), evaluate(ag2, t2)
        if squared_distance(p1, p2) > close:
            continue
        accepted += 1
        d_a = squared_distance(p2, sym(p1, ag1, ag2))
        d_b = squared_distance(sym(p2, ag1, ag2), p1)
        if d_a > bound or d_b > bound:
            violations.append({"t1": t1, "t2": t2, "ag1": ag1.points, "ag2": ag2.points, "d_a": d_a, "d_b": d_b})
    rep = VerificationReport("sym-lemma", seed=seed, config={"samples": samples, "eps": consts.eps})
    rep.add("sym-within-1/9", "close gadget points are within 1/9 of each other's symmetric point",
            not violations, accepted=accepted, tries=tries, violations=violations[:5])
    return rep


def check_gadget_robustness(trials: int = 200, seed: int = 0, consts: GadgetConstants = DEFAULT_CONSTANTS,
                            max_clauses: int = 5, max_suffix: int = 8) -> VerificationReport:
    """Unsatisfied gadget pairs stay above ``1 + eps`` whatever follows them.

    Suffix vertices are drawn from the point sets of each side; arbitrary
    suffix curves cannot be enumerated.
    """
    rng = random.Random(seed)
    q1, q2 = list(consts.q1().values()), list(consts.q2().values())
    bad = []
    for _ in range(trials):
        m = rng.randint(1, max_clauses)
        b1, b2 = list(_random_bits(rng, m)), list(_random_bits(rng, m))
        i = rng.randrange(m)
        b1[i] = b2[i] = False
        c1 = gadget_from_bits(b1, 1, consts)
        c2 = gadget_from_bits(b2, 2, consts)
        pi1 = [rng.choice(q1) for _ in range(rng.randint(0, max_suffix))]
        pi2 = [rng.choice(q2) for _ in range(rng.randint(0, max_suffix))]
        C1 = Curve(c1.points + tuple(pi1), "rational")
        C2 = Curve(c2.points + tuple(pi2), "rational")
        if discrete_decision(C1, C2, 1 + consts.eps):
            bad.append({"bits1": b1, "bits2": b2, "suffix1": pi1, "suffix2": pi2})
    rep = VerificationReport("gadget-robustness", seed=seed, config={"trials": trials})
    rep.add("unsat-gadget-with-suffix", "unsatisfied gadget pair with any suffixes exceeds 1+eps", not bad, violations=bad[:5])
    return rep


def expected_sizes(num_a1: int, num_a2: int, m: int) -> tuple[int, int]:
    return num_a1 * (m + 3), num_a2 * (m + 1) + 4

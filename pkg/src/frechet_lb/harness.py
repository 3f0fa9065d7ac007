"""End-to-end verification campaigns and runtime scaling benchmarks."""

from __future__ import annotations

import math
import statistics
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import or_gadget, reduction_highdim, reduction_plane
from .frechet import cell_count, continuous_decision, discrete_decision, discrete_frechet
from .instance import ReductionInstance
from .ov import cnf_to_ov, ov_brute, ov_to_curves
from .packedness import estimate_packedness
from .report import VerificationReport
from .sat import (
    CnfFormula,
    VariableSplit,
    all_sign_patterns,
    brute_force_sat,
    enumerate_assignments,
    force_unsat,
    half_split,
    random_kcnf,
    split_satisfies,
)

KINDS = ("plane", "imbalanced", "or_packed", "highdim", "ov")
GENERATORS = ("random", "crafted", "forced_unsat")
FLOAT_MARGIN = 1e-6


# -- single instances ------------------------------------------------------------

def build_instance(phi: CnfFormula, kind: str, params: dict | None = None) -> tuple[ReductionInstance, object]:
    """Instance of ``kind`` plus the pair family for composed kinds (else None)."""
    params = params or {}
    if kind == "plane":
        return reduction_plane.build_plane_curves(phi), None
    if kind == "imbalanced":
        return reduction_plane.build_imbalanced(phi, Fraction(params.get("gamma", Fraction(1, 2)))), None
    if kind == "or_packed":
        fam = or_gadget.plane_pair_family(phi, _ell(phi, params))
        return or_gadget.build_or_curves(fam), fam
    if kind == "highdim":
        fam = reduction_highdim.highdim_pair_family(phi, _ell(phi, params), params.get("eps", reduction_highdim.DEFAULT_EPS))
        return or_gadget.build_or_curves(fam, kind="highdim"), fam
    if kind == "ov":
        return ov_to_curves(cnf_to_ov(phi)), None
    raise ValueError(f"unknown kind {kind!r}")


def _ell(phi: CnfFormula, params: dict) -> int:
    # clamp so every bucket is non-empty
    ell = int(params.get("ell", 2))
    smallest = min(len(half_split(phi).v1), len(half_split(phi).v2))
    return max(1, min(ell, 2 ** smallest))


def _check_exact_gap(rep, inst, satisfiable):
    eps = inst.params["eps"]
    res = discrete_frechet(inst.P1, inst.P2)
    if satisfiable:
        rep.add("discrete-accept", "discrete distance at most 1 for a satisfiable formula",
                res.squared <= 1, value=res.value, traversal_length=len(res.traversal))
    else:
        rep.add("discrete-reject", "discrete distance above 1 + eps for an unsatisfiable formula",
                res.squared > (1 + eps) ** 2 and not discrete_decision(inst.P1, inst.P2, 1 + eps),
                value=res.value, delta=1 + eps)
    c1 = continuous_decision(inst.P1, inst.P2, 1)
    rep.add("continuous-at-1", "continuous decision at 1 matches satisfiability", c1 == satisfiable,
            decision=c1, satisfiable=satisfiable)
    if not satisfiable:
        c2 = continuous_decision(inst.P1, inst.P2, float(1 + eps))
        rep.add("continuous-reject", "continuous decision at 1 + eps rejects", not c2, delta=1 + eps)


def _check_composed(rep, inst, fam, phi, satisfiable, continuous_hard: bool):
    reject = min(fam.beta, or_gadget.REJECT_CAP) - FLOAT_MARGIN
    d1 = discrete_decision(inst.P1, inst.P2, 1)
    rep.add("discrete-at-1", "discrete decision at 1 matches satisfiability", d1 == satisfiable,
            decision=d1, satisfiable=satisfiable)
    if not satisfiable:
        d2 = discrete_decision(inst.P1, inst.P2, reject)
        rep.add("discrete-reject", "discrete decision rejects just below min(beta, 1.2)", not d2, delta=reject)
    c1 = continuous_decision(inst.P1, inst.P2, 1)
    c2 = None if satisfiable else continuous_decision(inst.P1, inst.P2, reject)
    claim = "continuous decision at 1 matches satisfiability"
    if continuous_hard:
        rep.add("continuous-at-1", claim, c1 == satisfiable, decision=c1, satisfiable=satisfiable)
        if c2 is not None:
            rep.add("continuous-reject", "continuous decision rejects just below min(beta, 1.2)", not c2, delta=reject)
    else:
        ok = c1 == satisfiable and not c2
        rep.note("continuous-at-1", claim + " (informational for this kind)", ok,
                 decision_at_1=c1, decision_at_reject=c2, satisfiable=satisfiable)
    e1, e2 = or_gadget.expected_or_sizes(fam)
    rep.add("or-vertex-counts", "|Rk| = sum(|Pk^j| + 10) + 10(k - 1)", (inst.n, inst.m) == (e1, e2),
            n=inst.n, m=inst.m, expected=[e1, e2])
    blocks_ok = all(
        np.allclose(or_gadget.extract_block(inst.P1, fam, j).as_array(), fam.pairs[j - 1][0].as_array(), atol=1e-12)
        for j in range(1, len(fam) + 1)
    )
    rep.add("or-blocks", "removing U-shapes and undoing shifts recovers every P1^j", blocks_ok)
    mode = "continuous" if continuous_hard else "discrete"
    rep.extend(or_gadget.check_property_pg(fam, phi, brute_force_sat, samples=5, mode=mode), prefix="pg/")


def verify_reduction(phi: CnfFormula, kind: str, params: dict | None = None, seed: int = 0) -> VerificationReport:
    """Build one reduction instance and check both directions of its gap.

    Plane-type kinds are checked exactly. Composed kinds are checked at 1 and
    just below ``min(beta, 1.2)``. For ``highdim`` the continuous result is
    recorded as a note, since that construction is only shown correct for the
    discrete distance.
    """
    params = dict(params or {})
    rep = VerificationReport(f"verify/{kind}", seed=seed, config={"kind": kind, "params": params, "formula": phi.digest(),
                                                              "N": phi.num_vars, "M": phi.num_clauses})
    witness = brute_force_sat(phi)
    satisfiable = witness is not None
    rep.config["satisfiable"] = satisfiable
    inst, fam = build_instance(phi, kind, params)
    if kind in ("plane", "imbalanced", "ov"):
        _check_exact_gap(rep, inst, satisfiable)
        if kind == "ov":
            found = ov_brute(cnf_to_ov(phi)) is not None
            rep.add("ov-equivalence", "orthogonal pair exists iff satisfiable", found == satisfiable, found=found)
        else:
            m = phi.num_clauses
            A1, A2 = 2 ** inst.split.ell, 2 ** (phi.num_vars - inst.split.ell)
            expect = reduction_plane.expected_sizes(A1, A2, m)
            rep.add("vertex-counts", "|P1| = |A1|(M+3), |P2| = |A2|(M+1)+4", (inst.n, inst.m) == expect,
                    n=inst.n, m=inst.m, expected=list(expect))
    else:
        _check_composed(rep, inst, fam, phi, satisfiable, continuous_hard=(kind == "or_packed"))
        if kind == "highdim" and not satisfiable:
            eps = fam.params["eps"]
            half = discrete_decision(inst.P1, inst.P2, 1 + eps / 2)
            rep.add("discrete-reject-half-eps", "discrete decision rejects at 1 + eps/2", not half, delta=1 + eps / 2)
    if satisfiable:
        split = half_split(phi)
        a1 = {v: witness[v] for v in split.v1}
        rep.add("witness-split", "brute-force witness satisfies every clause across the split",
                phi.is_satisfied_by(witness), witness=witness, V1=a1)
    return rep


# -- campaigns ---------------------------------------------------------------------

@dataclass
class CampaignConfig:
    """Formula suite and reduction kinds for :func:`run_campaign`.

    Random formulas cycle through ``sizes`` and ``densities`` (clauses per
    variable) with clauses of width ``width``.
    """

    trials: int = 200
    sizes: tuple = (2, 4, 6, 8, 10)
    densities: tuple = (2, 4)
    width: int = 3
    generators: tuple = GENERATORS
    kinds: tuple = ("plane", "imbalanced", "or_packed", "highdim")
    gamma: Fraction = Fraction(1, 2)
    ell: int = 2
    eps: float = 1e-4
    max_vars: int = 10
    seed: int = 0

    def params_for(self, kind: str) -> dict:
        return {"imbalanced": {"gamma": self.gamma}, "or_packed": {"ell": self.ell},
                "highdim": {"ell": self.ell, "eps": self.eps}}.get(kind, {})


def crafted_formulas(max_vars: int = 10) -> list[tuple[str, CnfFormula]]:
    """Corner cases: single clause, contradictions, all sign patterns, duplicates."""
    out = [
        ("single-clause", CnfFormula(2, ((1, 2),))),
        ("single-literal", CnfFormula(2, ((-2,),))),
        ("xor", CnfFormula(2, ((1, 2), (-1, -2)))),
        ("contradiction", CnfFormula(2, ((1,), (-1,)))),
        ("all-patterns-2", all_sign_patterns(2, 2)),
        ("all-patterns-3", all_sign_patterns(4, 3)),
        ("duplicate-clauses", CnfFormula(4, ((1, -2), (1, -2), (3, 4), (3, 4), (-1, -3)))),
        ("repeated-literal", CnfFormula(4, ((1, 1, -3), (2, 2), (-1, -2, 4)))),
        ("wide-clause", CnfFormula(6, (tuple(range(1, 7)), (-1,), (-2,), (-3,)))),
        ("all-patterns-split", CnfFormula(4, tuple((a, b) for a in (1, -1) for b in (3, -3)))),
    ]
    return [(name, phi) for name, phi in out if phi.num_vars <= max_vars]


def build_suite(config: CampaignConfig) -> list[tuple[str, CnfFormula]]:
    if not config.generators:
        raise ValueError("campaign needs at least one formula generator")
    unknown = set(config.generators) - set(GENERATORS)
    if unknown:
        raise ValueError(f"unknown generators {sorted(unknown)}")
    rng = np.random.default_rng(config.seed)
    sizes = [n for n in config.sizes if 2 <= n <= config.max_vars]
    if not sizes and ("random" in config.generators or "forced_unsat" in config.generators):
        raise ValueError("no admissible formula sizes")
    suite = []
    if "random" in config.generators:
        for t in range(config.trials):
            n = sizes[t % len(sizes)]
            dens = config.densities[(t // len(sizes)) % len(config.densities)]
            suite.append((f"random-{t}-N{n}-M{dens * n}", random_kcnf(n, dens * n, config.width, rng)))
    if "crafted" in config.generators:
        suite += crafted_formulas(config.max_vars)
    if "forced_unsat" in config.generators:
        for n in sizes:
            suite.append((f"forced-unsat-N{n}", force_unsat(random_kcnf(n, n, config.width, rng))))
    return suite


def run_campaign(config: CampaignConfig, progress=None) -> VerificationReport:
    """Run :func:`verify_reduction` for every (formula, kind) pair of the suite."""
    suite = build_suite(config)
    unknown = set(config.kinds) - set(KINDS)
    if unknown or not config.kinds:
        raise ValueError(f"bad kinds {sorted(unknown) or 'none'}")
    cfg = asdict(config)
    rep = VerificationReport("campaign", seed=config.seed, config=cfg)
    for idx, (name, phi) in enumerate(suite):
        for kind in config.kinds:
            sub = verify_reduction(phi, kind, config.params_for(kind), seed=config.seed)
            rep.extend(sub, prefix=f"{name}/{kind}/")
            if sub.failures:
                rep.records[-1].witness.setdefault("replay", {"dimacs_clauses": [list(c) for c in phi.clauses],
                                                              "num_vars": phi.num_vars, "kind": kind})
        if progress:
            progress(idx + 1, len(suite))
    return rep


# -- scaling ------------------------------------------------------------------------

@dataclass
class ScalingRow:
    kind: str
    n: int
    m: int
    cells: int
    c_estimate: float | None
    t_discrete: float
    t_continuous: float


@dataclass
class ScalingTable:
    rows: list = field(default_factory=list)

    @property
    def slope_discrete(self) -> float:
        return fit_slope([r.n for r in self.rows], [r.t_discrete for r in self.rows])

    @property
    def slope_continuous(self) -> float:
        return fit_slope([r.n for r in self.rows], [r.t_continuous for r in self.rows])

    def to_dict(self) -> dict:
        return {"rows": [asdict(r) for r in self.rows], "slope_discrete": self.slope_discrete,
                "slope_continuous": self.slope_continuous}


def fit_slope(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Least-squares slope of ``log y`` against ``log x``."""
    if len(xs) < 2:
        return float("nan")
    return float(np.polyfit(np.log(xs), np.log(ys), 1)[0])


def plane_bench_instance(n: int, m_clauses: int = 5, seed: int = 0) -> ReductionInstance:
    """Planar instance with ``|P1| = n`` exactly when ``M + 3`` divides ``n``.

    ``|A1| = n / (M + 3)`` leading assignments of one half and about as many
    vertices on the other side; ``N`` grows with ``n``.
    """
    a1 = max(1, n // (m_clauses + 3))
    a2 = max(1, round((n - 4) / (m_clauses + 1)))
    half = max(1, math.ceil(math.log2(max(a1, a2))))
    phi = random_kcnf(2 * half, m_clauses, 3, np.random.default_rng(seed))
    split = VariableSplit(2 * half, half)
    A1 = enumerate_assignments(split.v1)[:a1]
    A2 = enumerate_assignments(split.v2)[:a2]
    return reduction_plane.build_plane_curves(phi, split, A1, A2)


def _composed_bench_instance(kind: str, n: int, seed: int) -> ReductionInstance:
    rng = np.random.default_rng(seed)
    N = 2
    while True:
        phi = random_kcnf(N, 3, 3, rng)
        inst, _ = build_instance(phi, kind, {"ell": 2})
        if inst.n >= n or N >= 16:
            return inst
        N += 2


def _median_time(fn, reps: int) -> float:
    fn()  # warmup, includes compilation
    times = []
    for _ in range(reps):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return statistics.median(times)


def bench_scaling(kind: str, sizes: Sequence[int], repetitions: int = 5, seed: int = 0) -> ScalingTable:
    """Median wall times of the discrete DP and the continuous decision per size.

    Curves are converted to floats before timing so only the algorithms are
    measured.
    """
    sizes = list(sizes)
    if sizes != sorted(sizes) or len(set(sizes)) != len(sizes):
        raise ValueError("sizes must be strictly ascending")
    if repetitions < 1:
        raise ValueError("repetitions must be positive")
    table = ScalingTable()
    for n in sizes:
        if kind in ("plane", "imbalanced", "ov"):
            inst = plane_bench_instance(n, seed=seed)
        else:
            inst = _composed_bench_instance(kind, n, seed)
        P1, P2 = inst.P1.to_float(), inst.P2.to_float()
        if table.rows and len(P1) <= table.rows[-1].n:
            raise ValueError(f"size {n} does not yield a larger instance than the previous one")
        td = _median_time(lambda: discrete_frechet(P1, P2), repetitions)
        tc = _median_time(lambda: continuous_decision(P1, P2, 1.0), repetitions)
        c = estimate_packedness(P1).value if kind == "or_packed" else None
        table.rows.append(ScalingRow(kind, len(P1), len(P2), cell_count(P1, P2), c, td, tc))
    return table

import itertools
import math

import numpy as np
import pytest

from frechet_lb.frechet import continuous_decision, discrete_decision
from frechet_lb.or_gadget import RHO
from frechet_lb.reduction_highdim import (
    EPS_MAX,
    HighDimParams,
    Points,
    angle,
    build_highdim_pair,
    check_highdim_distances,
    curves_from_bits,
    eps_max,
    highdim_pair_family,
    leading_coefficient,
    minimal_violation,
    packedness_claim,
    packedness_claim_check,
    rot,
    s1_r2_squared,
    s1_r2_squared_direct,
)
from frechet_lb.sat import CnfFormula, enumerate_assignments, half_split


def test_rot_geometry():
    size, m = 3, 2
    for h1, i1, h2, i2 in itertools.product(range(1, size + 1), range(m + 2), range(1, size + 1), range(m + 2)):
        a, b = rot(1, h1, i1, size, m), rot(2, h2, i2, size, m)
        assert math.isclose(np.linalg.norm(a - b), 1.0, rel_tol=1e-12)
    for k in (1, 2):
        assert math.isclose(np.linalg.norm(rot(k, 2, 1, size, m)), RHO)
    # side 1 sits on the upper arc
    assert all(rot(1, h, i, size, m)[1] >= RHO * math.sqrt(0.5) - 1e-12 for h in range(1, 4) for i in range(4))


def test_angles_increase_and_stay_in_quarter():
    size, m = 4, 3
    ts = [angle(h, i, size, m) for h in range(1, size + 1) for i in range(m + 2)]
    assert ts == sorted(ts) and len(set(ts)) == len(ts)
    assert math.pi / 4 <= ts[0] and ts[-1] < 3 * math.pi / 4
    with pytest.raises(IndexError):
        angle(0, 0, size, m)
    with pytest.raises(IndexError):
        angle(1, m + 2, size, m)


def test_params_validation():
    with pytest.raises(ValueError):
        HighDimParams(eps=2 * EPS_MAX)
    with pytest.raises(ValueError):
        HighDimParams(eps=1e-4, size1=0)


@pytest.mark.parametrize("eps", [1e-3, 1e-4, 1e-5])
def test_distance_families(eps):
    rep = check_highdim_distances(eps, samples=80, seed=1)
    assert rep.ok, [(r.name, r.witness) for r in rep.failures]
    names = {r.name for r in rep.records}
    assert {"q-s2", "q-s2*", "r1-r2", "cg-parity", "cg-sat", "cg-unsat"} <= names


def test_eps_max():
    assert eps_max(samples=40) == EPS_MAX


def test_s1_r2_closed_form():
    for eps in (1e-3, 1e-4, 1e-6):
        assert math.isclose(s1_r2_squared(eps), s1_r2_squared_direct(eps), rel_tol=1e-9)
    assert leading_coefficient(s1_r2_squared) == pytest.approx(-238, rel=1e-4)


def test_violation_margins_scale_linearly():
    a, b = minimal_violation(1e-3, samples=60), minimal_violation(1e-4, samples=60)
    for key in ("in_gadget", "parity"):
        assert 8 <= a[key] / b[key] <= 12


def test_curve_shapes():
    P1, P2 = curves_from_bits([[True, False]] * 3, [[False, True]] * 2, 1e-4)
    assert (len(P1), len(P2)) == (3 * 5, 2 * 3 + 4)
    assert P1.dim == P2.dim == 5


def test_claim_example():
    assert packedness_claim(1e-4, 4, 8) == pytest.approx(1.32)


def test_unit_ball_and_segments():
    phi = CnfFormula(4, ((1, 2), (-1, 3), (4,)))
    s = half_split(phi)
    A = enumerate_assignments(s.v1)
    pair = build_highdim_pair(phi, A, enumerate_assignments(s.v2))
    rep = packedness_claim_check(pair, 1e-4, 3, (len(A), 4))
    for name in ("P1-unit-ball", "P2-unit-ball", "P1-segments", "P2-segments"):
        assert rep.by_name(name).passed, rep.by_name(name).witness


def test_family_balls():
    phi = CnfFormula(4, ((1, 2), (-3,)))
    fam = highdim_pair_family(phi, 2)
    assert len(fam) == 4 and fam.beta == pytest.approx(1 + 1e-4)


def test_discrete_gap_on_unsat_pair():
    phi = CnfFormula(2, ((1,), (-1,), (2, -2)))
    s = half_split(phi)
    P1, P2 = build_highdim_pair(phi, enumerate_assignments(s.v1), enumerate_assignments(s.v2))
    assert not discrete_decision(P1, P2, 1 + 0.5e-4)


def test_continuous_escape_through_origin():
    # The continuous variant accepts this unsat pair: P2 passes close to the
    # origin, which is within 1 of every P1 vertex, and can wait there.
    phi = CnfFormula(2, ((1,), (-1,), (2, -2)))
    s = half_split(phi)
    P1, P2 = build_highdim_pair(phi, enumerate_assignments(s.v1), enumerate_assignments(s.v2))
    assert np.linalg.norm(P1.as_array(), axis=1).max() < 1
    assert continuous_decision(P1, P2, 1.0)


def test_packedness_tracks_claim_up_to_constant():
    # estimate / claim stays within a bounded band across sizes
    from frechet_lb.packedness import estimate_packedness
    ratios = []
    for m, n in ((2, 4), (4, 4), (3, 6), (6, 6), (4, 8)):
        bits = [[(h + i) % 3 == 0 for i in range(m)] for h in range(2 ** (n // 2))]
        P1, _ = curves_from_bits(bits, bits[:2], 1e-4)
        ratios.append(estimate_packedness(P1).value / packedness_claim(1e-4, m, len(bits)))
    assert max(ratios) / min(ratios) <= 8

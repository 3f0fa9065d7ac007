import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from frechet_lb.frechet import discrete_decision
from frechet_lb.geometry import Curve
from frechet_lb.or_gadget import (
    RHO,
    PairFamily,
    build_or_curves,
    check_property_pg,
    ell_for_gamma,
    expected_or_sizes,
    extract_block,
    partition_assignments,
    plane_pair_family,
    u_shapes,
    witness_pair_index,
)
from frechet_lb.reduction_plane import build_plane_curves
from frechet_lb.sat import CnfFormula, brute_force_sat, random_kcnf


def test_partition_examples():
    assert partition_assignments(range(5), 2) == [[0, 1, 2], [3, 4]]
    assert partition_assignments(range(4), 4) == [[0], [1], [2], [3]]
    with pytest.raises(ValueError):
        partition_assignments(range(3), 4)
    with pytest.raises(ValueError):
        partition_assignments(range(3), 0)


@given(st.integers(1, 60), st.data())
def test_partition_balanced(n, data):
    ell = data.draw(st.integers(1, n))
    parts = partition_assignments(range(n), ell)
    assert [x for p in parts for x in p] == list(range(n))
    sizes = [len(p) for p in parts]
    assert max(sizes) - min(sizes) <= 1 and sizes == sorted(sizes, reverse=True)


def test_u_shapes():
    UL, UR, U = u_shapes(3)
    assert len(UL) == len(UR) == 5 and len(U) == 10
    assert UL.points[0] == (3 * RHO, 0.0) and UR.points[-1] == (3 * RHO, 0.0)
    # the gap between the two inner walls is 2 rho
    assert math.isclose(UR.points[0][0] - UL.points[-1][0], 2 * RHO)
    assert u_shapes(1, dim=5)[2].dim == 5
    with pytest.raises(ValueError):
        u_shapes(0)


def test_unit_connector_family():
    seg1 = Curve.of([(-0.5, RHO), (0.5, RHO)], "float")
    seg2 = Curve.of([(-0.5, 0.0), (0.5, 0.0)], "float")
    fam = PairFamily([(seg1, seg2)], c=2.0, beta=1.5)
    inst = build_or_curves(fam)
    assert (inst.n, inst.m) == expected_or_sizes(fam) == (12, 22)
    assert discrete_decision(inst.P1, inst.P2, 1 + 1e-9)


def test_family_validation():
    far = Curve.of([(0.0, 5.0), (1.0, 5.0)], "float")
    near = Curve.of([(0.0, 0.0), (0.1, 0.0)], "float")
    with pytest.raises(ValueError, match="unit ball"):
        PairFamily([(far, near)], c=1, beta=1.1)
    with pytest.raises(ValueError):
        PairFamily([], c=1, beta=1.1)
    with pytest.raises(ValueError):
        PairFamily([(near, near)], c=1, beta=1.0)


def test_sizes_single_pair_of_8():
    phi = random_kcnf(6, 4, 3, np.random.default_rng(1))
    fam = plane_pair_family(phi, 1)
    inst = build_or_curves(fam)
    p = build_plane_curves(phi)
    assert (inst.n, inst.m) == (p.n + 10, p.m + 20)


def test_block_extraction_and_shape():
    phi = random_kcnf(4, 3, 2, np.random.default_rng(4))
    fam = plane_pair_family(phi, 2)
    assert len(fam) == 4 and fam.buckets == [(1, 1), (1, 2), (2, 1), (2, 2)]
    inst = build_or_curves(fam)
    for j in range(1, 5):
        np.testing.assert_allclose(extract_block(inst.P1, fam, j).as_array(), fam.pairs[j - 1][0].as_array(), atol=1e-12)
    u_r1 = len(fam) * 10
    u_r2 = (len(fam) + 1) * 10
    assert u_r2 - u_r1 == 10
    assert inst.reject == pytest.approx(1.001)


def test_ell_for_gamma():
    assert ell_for_gamma(8, 1) == 1
    assert ell_for_gamma(8, 0) == 16
    assert ell_for_gamma(8, 0.5) == 3
    with pytest.raises(ValueError):
        ell_for_gamma(8, 2)


def test_witness_pair_index():
    phi = CnfFormula(4, ((1,), (4,)))
    fam = plane_pair_family(phi, 2)
    w = brute_force_sat(phi)
    assert witness_pair_index(fam, w) == 1
    assert witness_pair_index(fam, {1: False, 2: False, 3: False, 4: False}) == 4


def test_property_pg_sat_and_unsat():
    sat = CnfFormula(4, ((1, 3), (-2, 4)))
    assert check_property_pg(plane_pair_family(sat, 2), sat, brute_force_sat, samples=5).ok
    unsat = CnfFormula(4, ((1,), (-1,), (2, 3)))
    rep = check_property_pg(plane_pair_family(unsat, 2), unsat, brute_force_sat, samples=10, seed=2)
    assert rep.ok, rep.failures
    with pytest.raises(ValueError):
        check_property_pg(plane_pair_family(unsat, 2), unsat, brute_force_sat, mode="bogus")

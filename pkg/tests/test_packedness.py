import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frechet_lb.geometry import Curve, GeometryError
from frechet_lb.packedness import FAST, THOROUGH, ball_length, estimate_packedness
from oracles import sampled_ball_length

coord = st.floats(-5, 5, allow_nan=False)
curves = st.lists(st.tuples(coord, coord), min_size=2, max_size=8).map(lambda p: Curve.of(p, "float"))


def test_examples():
    seg = Curve.of([(0.0, 0.0), (1.0, 0.0)])
    assert ball_length(seg, (0.5, 0.0), 0.25) == pytest.approx(0.5)
    assert ball_length(seg, (0.5, 1.0), 0.5) == 0.0
    assert ball_length(seg, (0.0, 0.0), 10) == pytest.approx(1.0)
    assert ball_length(Curve.of([(1.0, 1.0)]), (1.0, 1.0), 1) == 0.0
    with pytest.raises(ValueError):
        ball_length(seg, (0, 0), 0)


@settings(max_examples=25)
@given(curves, st.tuples(coord, coord), st.floats(0.1, 6))
def test_matches_sampling_oracle(c, q, r):
    exact = ball_length(c, q, r)
    approx = sampled_ball_length(c.points, q, r, samples_per_segment=4000)
    total = sum(np.linalg.norm(np.diff(c.as_array(), axis=0), axis=1))
    assert exact == pytest.approx(approx, abs=2e-3 * max(total, 1))


@given(curves, st.tuples(coord, coord), st.floats(0.01, 5), st.floats(0, 5))
def test_monotone_and_bounded(c, q, r, dr):
    total = float(np.linalg.norm(np.diff(c.as_array(), axis=0), axis=1).sum())
    a, b = ball_length(c, q, r), ball_length(c, q, r + dr)
    assert a <= b + 1e-9
    assert b <= total + 1e-9
    assert ball_length(c, q, 100.0) == pytest.approx(total)


def test_segment_estimate_is_two():
    est = estimate_packedness(Curve.of([(0.0, 0.0), (3.0, 0.0)]))
    assert est.value == pytest.approx(2.0)


def test_back_and_forth_counts_multiplicity():
    once = estimate_packedness(Curve.of([(0.0, 0.0), (1.0, 0.0)])).value
    thrice = estimate_packedness(Curve.of([(0.0, 0.0), (1.0, 0.0), (0.0, 0.0), (1.0, 0.0)])).value
    assert thrice == pytest.approx(3 * once)


@settings(max_examples=30)
@given(curves)
def test_witness_rechecks(c):
    try:
        est = estimate_packedness(c, THOROUGH)
    except GeometryError:
        return
    assert est.recheck(c) == pytest.approx(est.value, abs=1e-9)
    assert est.value >= estimate_packedness(c, FAST).value - 1e-12


@settings(max_examples=30)
@given(curves, st.floats(0.1, 10))
def test_scale_invariant(c, s):
    try:
        a = estimate_packedness(c).value
    except GeometryError:
        return
    scaled = Curve.of([tuple(s * x for x in p) for p in c.points], "float")
    assert estimate_packedness(scaled).value == pytest.approx(a, rel=1e-6)


def test_degenerate_curves():
    with pytest.raises(GeometryError):
        estimate_packedness(Curve.of([(0.0, 0.0)]))
    with pytest.raises(GeometryError):
        estimate_packedness(Curve.of([(0.0, 0.0), (0.0, 0.0)]))
    with pytest.raises(ValueError):
        estimate_packedness(Curve.of([(0.0, 0.0), (1.0, 0.0)]), "slow")


def test_zigzag_grows_with_folds():
    zig = lambda k: Curve.of([(float(i % 2), i * 1e-3) for i in range(k)], "float")
    assert estimate_packedness(zig(40)).value > 4 * estimate_packedness(zig(6)).value

from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frechet_lb.frechet import (
    TraversalError,
    continuous_decision,
    continuous_value,
    discrete_decision,
    discrete_frechet,
    traversal_width,
)
from frechet_lb.geometry import Curve, GeometryError
from oracles import brute_discrete_frechet_sq

small = st.integers(-6, 6)
int_curves = st.lists(st.tuples(small, small), min_size=1, max_size=6).map(lambda ps: Curve.of(ps, "rational"))
float_curves = st.lists(st.tuples(st.floats(-3, 3), st.floats(-3, 3)), min_size=1, max_size=7).map(
    lambda ps: Curve.of(ps, "float"))

SEG_A = Curve.of([(0, 0), (1, 0)])
SEG_B = Curve.of([(0, 1), (1, 1)])


def test_parallel_segments():
    r = discrete_frechet(SEG_A, SEG_B)
    assert r.value == 1 and r.traversal == ((0, 0), (1, 1))
    assert discrete_decision(SEG_A, SEG_B, 1)
    assert not discrete_decision(SEG_A, SEG_B, 0.999)
    assert continuous_decision(SEG_A, SEG_B, 1)
    assert not continuous_decision(SEG_A, SEG_B, 0.5)
    assert 1.0 in continuous_value(SEG_A, SEG_B, tol=1e-6)


def test_identity_is_zero():
    P = Curve.of([(0, 0), (3, 1), (2, 5)])
    assert discrete_frechet(P, P).value == 0
    assert traversal_width(P, P, [(0, 0), (1, 1), (2, 2)]) == 0


def test_point_vs_point():
    br = continuous_value(Curve.of([(0.0, 0.0)]), Curve.of([(2.0, 0.0)]), tol=1e-6)
    assert br.lower <= 2.0 <= br.upper
    assert br.width <= 1e-6


def test_errors():
    with pytest.raises(GeometryError):
        discrete_frechet(SEG_A, Curve.of([(0, 0, 0)]))
    with pytest.raises(ValueError):
        discrete_decision(SEG_A, SEG_B, -1)
    with pytest.raises(ValueError):
        continuous_value(SEG_A.to_float(), SEG_B.to_float(), tol=0)
    with pytest.raises(TraversalError):
        traversal_width(SEG_A, SEG_B, [(0, 0), (1, 0)])
    with pytest.raises(TraversalError):
        traversal_width(SEG_A, SEG_B, [(0, 0), (0, 1), (0, 0), (1, 1)])


def test_tie_break_prefers_diagonal():
    P = Curve.of([(0, 0), (0, 0), (0, 0)])
    assert discrete_frechet(P, P).traversal == ((0, 0), (1, 1), (2, 2))


def test_continuous_below_discrete_on_refined_segment():
    # the continuous leash can stay on the segment interior
    P = Curve.of([(0.0, 0.0), (10.0, 0.0)])
    Q = Curve.of([(0.0, 1.0), (5.0, 1.0), (10.0, 1.0)])
    assert float(discrete_frechet(P, Q).value) > 5
    assert continuous_decision(P, Q, 1.0)


@settings(max_examples=150)
@given(int_curves, int_curves)
def test_dp_matches_path_enumeration(P, Q):
    r = discrete_frechet(P, Q)
    assert r.squared == brute_discrete_frechet_sq(P.points, Q.points)
    assert traversal_width(P, Q, r.traversal, squared=True) == r.squared


@given(int_curves, int_curves)
def test_symmetry(P, Q):
    assert discrete_frechet(P, Q).squared == discrete_frechet(Q, P).squared
    a = continuous_value(P.to_float(), Q.to_float(), tol=1e-7)
    b = continuous_value(Q.to_float(), P.to_float(), tol=1e-7)
    assert abs(a.upper - b.upper) <= 2e-7


@given(float_curves, float_curves, st.floats(0, 5), st.floats(0, 2))
def test_monotone_in_delta(P, Q, d, extra):
    if discrete_decision(P, Q, d):
        assert discrete_decision(P, Q, d + extra)
    if continuous_decision(P, Q, d):
        assert continuous_decision(P, Q, d + extra)


@given(float_curves, float_curves)
def test_decision_consistent_with_value(P, Q):
    r = discrete_frechet(P, Q)
    assert discrete_decision(P, Q, float(r.value))
    assert continuous_value(P, Q, tol=1e-6).upper <= float(r.value) + 1e-6


@given(int_curves, int_curves)
def test_exact_decision_at_exact_value(P, Q):
    r = discrete_frechet(P, Q)
    if isinstance(r.value, F):
        assert discrete_decision(P, Q, r.value)
        if r.value > 0:
            assert not discrete_decision(P, Q, r.value - F(1, 10**9))


@given(float_curves, float_curves)
def test_continuous_bracket_brackets_decision(P, Q):
    br = continuous_value(P, Q, tol=1e-5)
    assert br.width <= 1e-5 + 1e-12
    assert continuous_decision(P, Q, br.upper)
    if br.lower > 1e-9:
        assert not continuous_decision(P, Q, br.lower, tol=0.0)


def test_continuous_matches_dense_discretization():
    # refining both curves drives the discrete distance down to the continuous one
    rng = np.random.default_rng(5)
    for _ in range(20):
        A = rng.uniform(-1, 1, (4, 2))
        B = rng.uniform(-1, 1, (4, 2))
        def refine(X, k=40):
            pts = [X[0]]
            for a, b in zip(X, X[1:]):
                pts += [a + (b - a) * t for t in np.linspace(0, 1, k + 1)[1:]]
            return Curve.of([tuple(p) for p in pts], "float")
        dense = float(discrete_frechet(refine(A), refine(B)).value)
        br = continuous_value(Curve.of(A.tolist()), Curve.of(B.tolist()), tol=1e-7)
        assert br.lower - 1e-9 <= dense
        assert dense <= br.upper + 0.1


def test_large_coordinates_fall_back_to_python_ints():
    big = F(10**12, 7)
    P = Curve.of([(0, 0), (big, 0)])
    Q = Curve.of([(0, 1), (big, 1)])
    assert discrete_frechet(P, Q).value == 1
    assert discrete_decision(P, Q, 1)

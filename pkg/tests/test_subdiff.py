import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cusco import (
    ConvexPWAffine,
    IntervalValue,
    continuity_points,
    convexify,
    differentiability_points,
    envelopes,
    graph_closure,
    is_minimal_cusco,
    is_quasicontinuous,
    is_subcontinuous,
    subdifferential,
)
from cusco import corpus

ABS = ConvexPWAffine((-1, 0, 1), (-1, 1), 1)


def test_abs_at_kink():
    D = subdifferential(ABS)
    assert D.value_at(0) == (IntervalValue(-1, 1),)
    assert D.value_at(F(-1, 2)) == (IntervalValue.point(-1),)
    assert D.value_at(F(1, 2)) == (IntervalValue.point(1),)


def test_abs_values():
    assert [ABS(x) for x in (-1, 0, F(1, 2))] == [1, 0, F(1, 2)]


def test_affine_is_constant_slope():
    D = subdifferential(ConvexPWAffine((0, 2), (F(3, 2),), 0))
    assert D.value_at(0) == D.value_at(1) == D.value_at(2) == (IntervalValue.point(F(3, 2)),)


def test_hinge():
    D = subdifferential(ConvexPWAffine((-1, 0, 1), (0, 1), 0))
    assert D.value_at(0) == (IntervalValue(0, 1),)


def test_differentiability_abs():
    assert differentiability_points(ABS).excluded == {0}


def test_differentiability_affine():
    assert differentiability_points(ConvexPWAffine((0, 1), (5,), 0)).excluded == set()


def test_differentiability_three_pieces():
    g = ConvexPWAffine((-2, -1, 1, 2), (-1, 0, 1), 0)
    assert differentiability_points(g).excluded == {-1, 1}


def test_slopes_must_increase():
    with pytest.raises(ValueError):
        ConvexPWAffine((-1, 0, 1), (1, -1), 0)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**6))
def test_subdifferential_is_minimal_cusco(seed):
    g = corpus.convex_pwaffine(random.Random(seed))
    D = subdifferential(g)
    assert is_minimal_cusco(D).holds
    sup = envelopes(D)[1]
    assert is_quasicontinuous(sup).holds and is_subcontinuous(sup).holds
    assert convexify(graph_closure(sup)) == D
    assert differentiability_points(g) == continuity_points(sup)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**6))
def test_subdifferential_is_monotone(seed):
    g = corpus.convex_pwaffine(random.Random(seed))
    D = subdifferential(g)
    pts = sorted(set(g.breakpoints) | {(u + v) / 2 for u, v in zip(g.breakpoints, g.breakpoints[1:])})
    for x, y in zip(pts, pts[1:]):
        assert D.value_at(x)[-1].hi <= D.value_at(y)[0].lo

import math
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from builders import abs_map, affine, blowup_graph, const_map, example2_1, example2_2, sign_map, step
from cusco import (
    Affine,
    Band,
    ExtInterval,
    GraphMap,
    IntervalValue,
    MultiMap,
    PreconditionError,
    cluster_set,
    convexify,
    csc,
    envelopes,
    eval_at,
    graph_closure,
    has_closed_graph,
    is_cusco,
    is_subcontinuous,
    is_usco,
    one_sided_limits,
    restrict,
)
from cusco import corpus
from cusco.svmap import contained_in, points_value

P = IntervalValue.point


def test_graph_closure_step():
    G = graph_closure(step())
    assert isinstance(G, GraphMap)
    assert G.value_at(0) == points_value([0, 1])


def test_graph_closure_continuous_is_singleton():
    G = graph_closure(affine(2, 1, -1, 1))
    for x in (-1, F(-1, 3), 0, 1):
        assert G.value_at(x) == (P(2 * x + 1),)


def test_graph_closure_jump():
    assert graph_closure(example2_1()).value_at(0) == points_value([-1, 0, 1])


def test_graph_closure_rejects_blowup():
    with pytest.raises(PreconditionError) as exc:
        graph_closure(example2_2())
    assert exc.value.verdict.witnesses[0].point == 0


def test_convexify_finite_set():
    assert convexify(graph_closure(example2_1())).value_at(0) == (IntervalValue(-1, 1),)


def test_convexify_singletons_unchanged():
    G = graph_closure(affine(1, 0))
    assert convexify(G) == G


def test_convexify_two_bands():
    bands = (Band(Affine(0, 0), Affine(0, 1)), Band(Affine(0, 2), Affine(0, 3)))
    two = (IntervalValue(0, 1), IntervalValue(2, 3))
    M = MultiMap((0, 1), (bands,), (two, two))
    assert convexify(M).value_at(F(1, 2)) == (IntervalValue(0, 3),)


def test_csc_blowup_at_zero():
    iv = csc(example2_2(), 0)
    assert iv == ExtInterval(0, math.inf)
    assert str(iv) == "[0, +inf)"
    assert not iv.is_compact()


def test_csc_blowup_elsewhere_is_value():
    f = example2_2()
    for x in (F(-3, 2), F(-1, 7), F(1, 3), 2):
        assert csc(f, x) == ExtInterval(eval_at(f, x), eval_at(f, x))


def test_csc_continuous():
    f = affine(-1, 4, 0, 2)
    assert csc(f, F(1, 2)) == ExtInterval(F(7, 2), F(7, 2))


def test_csc_gap_at_blowup():
    # the closure at 0 only holds the value; CSC also reaches the unbounded branch
    assert cluster_set(example2_2(), 0).finite_members() == (0,)
    assert csc(example2_2(), 0).hi == math.inf


def test_usco_constant_interval():
    assert is_usco(const_map()).holds


def test_usco_fails_on_blowup_graph():
    v = is_usco(blowup_graph())
    assert not v.holds
    assert v.witnesses[0].point == 0


def test_usco_point_map_with_fat_value():
    M = MultiMap((-1, 0, 1), ((Band.curve(Affine(0, 0)),),) * 2, ((P(0),), (IntervalValue(-1, 1),), (P(0),)))
    assert is_usco(M).holds


def test_cusco_constant_interval():
    assert is_cusco(const_map()).holds


def test_cusco_rejects_two_bands():
    bands = (Band(Affine(0, 0), Affine(0, 1)), Band(Affine(0, 2), Affine(0, 3)))
    two = (IntervalValue(0, 1), IntervalValue(2, 3))
    assert not is_cusco(MultiMap((0, 1), (bands,), (two, two))).holds


def test_closed_graph_constant_interval():
    assert has_closed_graph(const_map()).holds


def test_closed_graph_blowup_is_closed_but_not_usco():
    assert has_closed_graph(blowup_graph()).holds
    assert not is_usco(blowup_graph()).holds


def test_closed_graph_misses_limits():
    M = MultiMap((-1, 0, 1), ((Band.curve(Affine(0, 0)),), (Band.curve(Affine(0, 1)),)),
                 ((P(0),), (P(F(1, 2)),), (P(1),)))
    assert not has_closed_graph(M).holds


def test_envelopes_abs():
    lo, hi = envelopes(abs_map())
    for x in (-1, F(-1, 2), 0, F(1, 3), 1):
        assert eval_at(lo, x) == -abs(x) and eval_at(hi, x) == abs(x)
    assert len(hi.pieces) == 2


def test_envelopes_sign():
    lo, hi = envelopes(sign_map())
    assert [eval_at(hi, x) for x in (F(-1, 2), 0, F(1, 2))] == [-1, 1, 1]
    assert [eval_at(lo, x) for x in (F(-1, 2), 0, F(1, 2))] == [-1, -1, 1]


def test_envelopes_constant_interval():
    lo, hi = envelopes(const_map())
    assert lo == affine(0, 0) and hi == affine(0, 1)


def test_map_rejects_crossing_band():
    with pytest.raises(ValueError):
        MultiMap((0, 1), ((Band(Affine(1, 0), Affine(0, F(1, 2))),),), ((P(0),), (P(1),)))


def test_map_rejects_overlapping_bands():
    bands = (Band(Affine(0, 0), Affine(0, 2)), Band(Affine(0, 1), Affine(0, 3)))
    with pytest.raises(ValueError):
        MultiMap((0, 1), (bands,), ((IntervalValue(0, 3),),) * 2)


def test_contained_in():
    assert contained_in(graph_closure(affine(0, 0)), const_map()).holds
    assert not contained_in(graph_closure(affine(0, 2)), const_map()).holds


def test_restrict_closure_loses_non_limit_value():
    f = example2_1()
    assert graph_closure(restrict(f, [0])).value_at(0) == points_value([-1, 1])


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**6))
def test_usco_hull_is_cusco(seed):
    G = corpus.usco_map(random.Random(seed))
    assert is_usco(G).holds
    assert is_cusco(convexify(G)).holds


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**6))
def test_usco_implies_closed_graph(seed):
    rng = random.Random(seed)
    M = corpus.convex_map(rng) if rng.random() < 0.5 else corpus.usco_map(rng)
    if is_usco(M).holds:
        assert has_closed_graph(M).holds


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**6))
def test_envelopes_are_selections(seed):
    M = corpus.usco_map(random.Random(seed))
    lo, hi = envelopes(M)
    pts = set(M.breakpoints) | {(u + v) / 2 for u, v in zip(M.breakpoints, M.breakpoints[1:])}
    for x in pts:
        value = M.value_at(x)
        assert any(iv.lo <= eval_at(lo, x) <= iv.hi for iv in value)
        assert any(iv.lo <= eval_at(hi, x) <= iv.hi for iv in value)
        assert eval_at(lo, x) == value[0].lo and eval_at(hi, x) == value[-1].hi


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 10**6))
def test_csc_of_subcontinuous_is_hull_of_closure(seed):
    f = corpus.pwfun(random.Random(seed))
    if not is_subcontinuous(f).holds:
        return
    for t in f.breakpoints:
        members = cluster_set(f, t).finite_members()
        assert csc(f, t) == ExtInterval(members[0], members[-1])


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**6))
def test_csc_at_blowups_is_unbounded(seed):
    f = corpus.pwfun(random.Random(seed), blowup=0.5)
    for t in f.breakpoints:
        lims = [x for x in one_sided_limits(f, t) if x is not None]
        iv = csc(f, t)
        if math.inf in lims:
            assert iv.hi == math.inf
        if -math.inf in lims:
            assert iv.lo == -math.inf

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from builders import affine, blowup_graph, const_map, example2_1, example2_2, jump, step
from cusco import (
    Affine,
    IntervalValue,
    MultiMap,
    PreconditionError,
    graph_closure,
    is_hyperplane_minimal,
    is_minimal_usco,
    is_quasicontinuous,
    is_usco,
)
from cusco import corpus
from cusco.convex2d import planar_is_hyperplane_minimal
from cusco.oracle import (
    default_basis,
    oracle_hyperplane_minimal,
    oracle_planar_hyperplane_minimal,
    oracle_quasicontinuous,
    oracle_usc,
    submap_search,
)
from cusco.svmap import Band


def test_basis_radii_shrink_inside_gap():
    B = default_basis((-2, 0, 1), 1, depth=4)
    assert B.center == 0
    assert list(B.radii) == sorted(B.radii, reverse=True)
    assert max(B.radii) < 1 and len(B.radii) == 4


def test_oracle_qc_examples():
    assert not oracle_quasicontinuous(example2_1()).holds
    assert oracle_quasicontinuous(step()).holds
    assert oracle_quasicontinuous(affine(0, 2)).holds


def test_oracle_hpmin_examples():
    assert oracle_hyperplane_minimal(example2_1()).holds
    v = oracle_hyperplane_minimal(jump(-1, 5, 1))
    assert not v.holds and v.witnesses[0].ray is not None
    assert oracle_hyperplane_minimal(affine(1, 1)).holds


def test_oracle_on_named_examples_deep():
    for f in (example2_1(), example2_2()):
        assert oracle_quasicontinuous(f, depth=10).holds == is_quasicontinuous(f).holds
        assert oracle_hyperplane_minimal(f, depth=10).holds == is_hyperplane_minimal(f).holds
    assert oracle_hyperplane_minimal(example2_2(), depth=10).holds


def test_oracle_usc_examples():
    assert oracle_usc(const_map()).holds
    assert not oracle_usc(blowup_graph()).holds
    M = MultiMap((-1, 0, 1), ((Band.curve(Affine(0, 0)),),) * 2,
                 ((IntervalValue.point(0),), (IntervalValue(-1, 1),), (IntervalValue.point(0),)))
    assert oracle_usc(M).holds


def test_submap_search_examples():
    assert submap_search(graph_closure(step())).holds
    assert not submap_search(const_map()).holds
    assert submap_search(graph_closure(affine(1, 0))).holds


def test_submap_search_requires_usco():
    with pytest.raises(PreconditionError):
        submap_search(blowup_graph())


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_function_oracles_agree(seed):
    f = corpus.pwfun(random.Random(seed))
    assert oracle_quasicontinuous(f).holds == is_quasicontinuous(f).holds
    assert oracle_hyperplane_minimal(f).holds == is_hyperplane_minimal(f).holds


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_map_oracles_agree(seed):
    rng = random.Random(seed)
    M = corpus.usco_map(rng) if rng.random() < 0.5 else corpus.convex_map(rng)
    usco = is_usco(M).holds
    assert oracle_usc(M).holds == usco
    if usco:
        assert submap_search(M).holds == is_minimal_usco(M).holds


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**6))
def test_planar_oracle_agrees(seed):
    f = corpus.curve2(random.Random(seed))
    assert oracle_planar_hyperplane_minimal(f).holds == planar_is_hyperplane_minimal(f).holds

"""Small hand-built functions and maps shared by the tests."""

from fractions import Fraction as F
from pathlib import Path

from cusco import Affine, IntervalValue, MultiMap, PWFun
from cusco.pwfun import reciprocal
from cusco.svmap import Band

FIXTURES = Path(__file__).parent / "fixtures"


def jump(left=-1, mid=0, right=1, a=-2, b=2) -> PWFun:
    """left on [a, 0), mid at 0, right on (0, b]."""
    return PWFun((a, 0, b), (Affine(0, left), Affine(0, right)), (left, mid, right))


def example2_1(a=-2, b=2) -> PWFun:
    return jump(-1, 0, 1, a, b)


def example2_2() -> PWFun:
    return PWFun((-2, 0, 2), (Affine(0, 0), reciprocal(0, 1, 0)), (0, 0, F(1, 2)))


def step() -> PWFun:
    """0 on x < 0, 0 at 0, 1 on x > 0."""
    return jump(0, 0, 1)


def affine(slope=1, intercept=0, a=0, b=1) -> PWFun:
    return PWFun.from_pieces((a, b), (Affine(slope, intercept),))


def const_map(lo=0, hi=1, a=0, b=1) -> MultiMap:
    band = Band(Affine(0, lo), Affine(0, hi))
    return MultiMap((a, b), ((band,),), ((IntervalValue(lo, hi),),) * 2)


def sign_map() -> MultiMap:
    """{-1} left of 0, [-1, 1] at 0, {1} right of 0."""
    return MultiMap((-1, 0, 1), ((Band.curve(Affine(0, -1)),), (Band.curve(Affine(0, 1)),)),
                    ((IntervalValue.point(-1),), (IntervalValue(-1, 1),), (IntervalValue.point(1),)))


def abs_map() -> MultiMap:
    """[-|x|, |x|] on [-1, 1]."""
    return MultiMap((-1, 0, 1),
                    ((Band(Affine(1, 0), Affine(-1, 0)),), (Band(Affine(-1, 0), Affine(1, 0)),)),
                    ((IntervalValue(-1, 1),), (IntervalValue.point(0),), (IntervalValue(-1, 1),)))


def blowup_graph() -> MultiMap:
    """Graph of 0 on [-2, 0], 1/x on (0, 2], with value {0} at 0."""
    return MultiMap((-2, 0, 2), ((Band.curve(Affine(0, 0)),), (Band.curve(reciprocal(0, 1, 0)),)),
                    ((IntervalValue.point(0),), (IntervalValue.point(0),), (IntervalValue.point(F(1, 2)),)))

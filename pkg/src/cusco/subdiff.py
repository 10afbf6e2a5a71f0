"""Subdifferentials of convex piecewise-affine functions."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from .pwfun import Affine, CofiniteSet, fmt_rat, locate, rat, validate_breaks
from .svmap import Band, IntervalValue, MultiMap


@dataclass(frozen=True)
class ConvexPWAffine:
    """Continuous convex function with slope ``slopes[i]`` on (breakpoints[i], breakpoints[i+1])."""

    breakpoints: Tuple[Fraction, ...]
    slopes: Tuple[Fraction, ...]
    anchor: Fraction

    def __post_init__(self):
        object.__setattr__(self, "breakpoints", tuple(rat(t) for t in self.breakpoints))
        object.__setattr__(self, "slopes", tuple(rat(s) for s in self.slopes))
        object.__setattr__(self, "anchor", rat(self.anchor))
        validate_breaks(self.breakpoints, len(self.slopes))
        for s, r in zip(self.slopes, self.slopes[1:]):
            if not s < r:
                raise ValueError(f"slopes must increase strictly (got {fmt_rat(s)} then {fmt_rat(r)})")

    @property
    def domain(self):
        return self.breakpoints[0], self.breakpoints[-1]

    def breakpoint_values(self) -> Tuple[Fraction, ...]:
        out = [self.anchor]
        for s, u, v in zip(self.slopes, self.breakpoints, self.breakpoints[1:]):
            out.append(out[-1] + s * (v - u))
        return tuple(out)

    def __call__(self, x) -> Fraction:
        x = rat(x)
        loc = locate(self.breakpoints, x)
        vals = self.breakpoint_values()
        if loc.on_break:
            return vals[loc.index]
        i = loc.index
        return vals[i] + self.slopes[i] * (x - self.breakpoints[i])


def subdifferential(g: ConvexPWAffine) -> MultiMap:
    bands = tuple((Band.curve(Affine(0, s)),) for s in g.slopes)
    n = len(g.slopes)
    values = []
    for i in range(len(g.breakpoints)):
        left = g.slopes[i - 1] if i > 0 else g.slopes[0]
        right = g.slopes[i] if i < n else g.slopes[-1]
        values.append((IntervalValue(left, right),))
    return MultiMap(g.breakpoints, bands, tuple(values))


def differentiability_points(g: ConvexPWAffine) -> CofiniteSet:
    # slopes increase strictly, so every interior breakpoint is a kink
    return CofiniteSet(g.breakpoints[0], g.breakpoints[-1], frozenset(g.breakpoints[1:-1]))

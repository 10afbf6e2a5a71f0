"""Exact planar convex geometry and planar piecewise-affine curves.

Hulls, extreme points and strict separation of convex polygons use only
rational cross and dot products.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, NamedTuple, Optional, Tuple

from .analysis import Verdict, Witness
from .pwfun import fmt_rat, locate, rat, validate_breaks


class SeparationError(ValueError):
    """The two convex sets intersect, so no strict separation exists."""


class Point2(NamedTuple):
    x: Fraction
    y: Fraction

    @classmethod
    def of(cls, x, y) -> "Point2":
        return cls(rat(x), rat(y))

    def __add__(self, o):
        return Point2(self.x + o.x, self.y + o.y)

    def __sub__(self, o):
        return Point2(self.x - o.x, self.y - o.y)

    def scale(self, k) -> "Point2":
        return Point2(self.x * k, self.y * k)

    def dot(self, o) -> Fraction:
        return self.x * o.x + self.y * o.y

    def __str__(self):
        return f"({fmt_rat(self.x)}, {fmt_rat(self.y)})"


def cross(o: Point2, a: Point2, b: Point2) -> Fraction:
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


@dataclass(frozen=True)
class Polygon:
    """Convex polygon, counterclockwise from its lexicographically least vertex.

    One vertex is a point, two a segment.
    """

    vertices: Tuple[Point2, ...]

    def edges(self) -> List[Tuple[Point2, Point2]]:
        vs = self.vertices
        if len(vs) == 1:
            return [(vs[0], vs[0])]
        if len(vs) == 2:
            return [(vs[0], vs[1])]
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def contains(self, p: Point2) -> bool:
        vs = self.vertices
        if len(vs) == 1:
            return p == vs[0]
        if len(vs) == 2:
            a, b = vs
            return cross(a, b, p) == 0 and (p - a).dot(b - a) >= 0 and (p - b).dot(a - b) >= 0
        return all(cross(a, b, p) >= 0 for a, b in self.edges())

    def __str__(self):
        return " ".join(str(v) for v in self.vertices)


def hull(points: Iterable[Point2]) -> Polygon:
    pts = sorted(set(Point2(rat(p[0]), rat(p[1])) for p in points))
    if not pts:
        raise ValueError("hull of an empty point set")
    if len(pts) <= 2:
        return Polygon(tuple(pts))

    def chain(seq):
        out: List[Point2] = []
        for p in seq:
            while len(out) >= 2 and cross(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = chain(pts)
    upper = chain(reversed(pts))
    ring = lower[:-1] + upper[:-1]
    if len(ring) == 2 and ring[0] == ring[1]:
        ring = ring[:1]
    # all collinear: monotone chain returns the two extremes (possibly twice)
    ring = list(dict.fromkeys(ring))
    start = ring.index(min(ring))
    return Polygon(tuple(ring[start:] + ring[:start]))


def extreme_points(P: Polygon) -> frozenset:
    return frozenset(P.vertices)


def milman_check(K: Iterable[Point2]) -> Verdict:
    """Every extreme point of hull(K) belongs to K (finite K)."""
    K = {Point2(rat(p[0]), rat(p[1])) for p in K}
    if not K:
        raise ValueError("empty point set")
    stray = extreme_points(hull(K)) - K
    witnesses = [Witness(p.x, f"extreme point {p} not in the set") for p in sorted(stray)]
    return Verdict(not witnesses, witnesses, "extreme points of the hull lie in the set")


@dataclass(frozen=True)
class LinFunc2:
    """Linear functional ``normal . p`` with threshold; defines {p : normal . p > threshold}."""

    normal: Point2
    threshold: Fraction

    def __post_init__(self):
        if self.normal == (0, 0):
            raise ValueError("zero normal")

    def __call__(self, p: Point2) -> Fraction:
        return self.normal.dot(p)

    def strictly_above(self, p: Point2) -> bool:
        return self(p) > self.threshold


def closest_on_segment(p: Point2, a: Point2, b: Point2) -> Point2:
    d = b - a
    dd = d.dot(d)
    if dd == 0:
        return a
    s = (p - a).dot(d) / dd
    s = min(max(s, Fraction(0)), Fraction(1))
    return a + d.scale(s)


def certificate_holds(h: LinFunc2, P: Polygon, Q: Polygon) -> bool:
    return all(h(p) < h.threshold for p in P.vertices) and all(h(q) > h.threshold for q in Q.vertices)


def separate(P: Polygon, Q: Polygon) -> LinFunc2:
    """Strictly separating functional: h < threshold on P and h > threshold on Q."""
    best = None
    for a0, a1 in P.edges():
        for b0, b1 in Q.edges():
            cands = [(a0, closest_on_segment(a0, b0, b1)), (a1, closest_on_segment(a1, b0, b1)),
                     (closest_on_segment(b0, a0, a1), b0), (closest_on_segment(b1, a0, a1), b1)]
            for p, q in cands:
                d = (q - p).dot(q - p)
                if best is None or d < best[0]:
                    best = (d, p, q)
    d, p, q = best
    if d == 0:
        raise SeparationError(f"polygons touch at {p}")
    normal = q - p
    h = LinFunc2(normal, (normal.dot(p) + normal.dot(q)) / 2)
    # closest pair of intersecting polygons can be nonzero (nested case)
    if not certificate_holds(h, P, Q):
        raise SeparationError("polygons intersect")
    return h


# ---------------------------------------------------------------------------
# planar curves
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AffinePath:
    """p(x) = base + x * velocity."""

    base: Point2
    velocity: Point2

    def __call__(self, x) -> Point2:
        return self.base + self.velocity.scale(rat(x))


@dataclass(frozen=True)
class Curve2:
    breakpoints: Tuple[Fraction, ...]
    pieces: Tuple[AffinePath, ...]
    values: Tuple[Optional[Point2], ...]

    def __post_init__(self):
        object.__setattr__(self, "breakpoints", tuple(rat(t) for t in self.breakpoints))
        object.__setattr__(self, "pieces", tuple(self.pieces))
        object.__setattr__(self, "values", tuple(None if v is None else Point2(rat(v[0]), rat(v[1])) for v in self.values))
        validate_breaks(self.breakpoints, len(self.pieces))
        if len(self.values) != len(self.breakpoints):
            raise ValueError("one value per breakpoint required")

    @property
    def domain(self):
        return self.breakpoints[0], self.breakpoints[-1]

    def __call__(self, x) -> Optional[Point2]:
        x = rat(x)
        loc = locate(self.breakpoints, x)
        return self.values[loc.index] if loc.on_break else self.pieces[loc.index](x)

    def limits(self, i: int) -> List[Point2]:
        """One-sided limit points at breakpoint ``i`` (left first)."""
        t = self.breakpoints[i]
        out = []
        if i > 0:
            out.append(self.pieces[i - 1](t))
        if i < len(self.pieces):
            out.append(self.pieces[i](t))
        return out

    def cluster_points(self, x) -> frozenset:
        x = rat(x)
        loc = locate(self.breakpoints, x)
        if not loc.on_break:
            return frozenset([self.pieces[loc.index](x)])
        pts = set(self.limits(loc.index))
        if self.values[loc.index] is not None:
            pts.add(self.values[loc.index])
        return frozenset(pts)


def planar_is_quasicontinuous(f: Curve2) -> Verdict:
    witnesses = []
    for i, (t, v) in enumerate(zip(f.breakpoints, f.values)):
        if v is not None and v not in f.limits(i):
            witnesses.append(Witness(t, f"value {v} is not a one-sided limit point"))
    return Verdict(not witnesses, witnesses, "planar quasicontinuity: value is a limit point")


def planar_is_hyperplane_minimal(f: Curve2) -> Verdict:
    """Defined breakpoint values lie in the hull of their one-sided limit points."""
    witnesses = []
    for i, (t, v) in enumerate(zip(f.breakpoints, f.values)):
        if v is None:
            continue
        H = hull(f.limits(i))
        if not H.contains(v):
            h = separate(H, hull([v]))
            witnesses.append(Witness(t, f"value {v} outside hull of limits {H}; "
                                        f"separated by normal {h.normal} at {fmt_rat(h.threshold)}"))
    return Verdict(not witnesses, witnesses, "planar hyperplane minimality: value in hull of limit points")


@dataclass(frozen=True)
class PlanarCusco:
    """Polygon-valued map: a point on each piece, a polygon at each breakpoint."""

    curve: Curve2
    polygons: Tuple[Polygon, ...]

    @property
    def breakpoints(self):
        return self.curve.breakpoints

    def value_at(self, x) -> Polygon:
        x = rat(x)
        loc = locate(self.curve.breakpoints, x)
        if loc.on_break:
            return self.polygons[loc.index]
        return Polygon((self.curve.pieces[loc.index](x),))


def planar_minimal_cusco_from(f: Curve2) -> PlanarCusco:
    from .svmap import PreconditionError

    qc = planar_is_quasicontinuous(f)
    if not qc:
        w = qc.witnesses[0]
        raise PreconditionError(f"not quasicontinuous at {fmt_rat(w.point)}: {w.detail}", qc)
    polys = tuple(hull(f.cluster_points(t)) for t in f.breakpoints)
    return PlanarCusco(f, polys)

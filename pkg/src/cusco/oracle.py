"""Brute-force checks that evaluate the neighborhood definitions directly.

Neighborhoods of a breakpoint come from a finite basis of radii; the open sets
searched inside a neighborhood are cells of a uniform grid plus geometrically
shrinking cells at both ends of each side. Images of cells are computed
exactly from piece monotonicity, so a failing verdict exhibits a concrete
neighborhood (and ray or fattening) where the definition breaks. A passing
verdict is evidence at the sampled resolution only.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from .analysis import DOWN, UP, Ray, Verdict, Witness
from .convex2d import Curve2, Point2
from .pwfun import (
    LEFT,
    MINUS_INF,
    PLUS_INF,
    RIGHT,
    Affine,
    ExtReal,
    Piece,
    PWFun,
    fmt_rat,
    is_finite,
    one_sided_limits,
)
from .svmap import Band, IntervalValue, MultiMap, PreconditionError, is_usco, points_value

DEFAULT_DEPTH = 6
UNIFORM_CELLS = 4
END_REFINEMENT = 48

LATTICE_DIRECTIONS = tuple(Point2.of(x, y) for x, y in [
    (1, 0), (0, 1), (-1, 0), (0, -1), (1, 1), (1, -1), (-1, 1), (-1, -1),
    (1, 2), (2, 1), (-1, 2), (-2, 1), (1, -2), (2, -1), (-1, -2), (-2, -1),
])


@dataclass(frozen=True)
class NbhdBasis:
    center: Fraction
    radii: Tuple[Fraction, ...]

    def __post_init__(self):
        if not self.radii or any(r <= 0 for r in self.radii):
            raise ValueError("radii must be positive")
        if any(not a > b for a, b in zip(self.radii, self.radii[1:])):
            raise ValueError("radii must decrease strictly")


def default_basis(breakpoints: Sequence[Fraction], i: int, depth: int = DEFAULT_DEPTH) -> NbhdBasis:
    """Radii: the gap to the nearest other breakpoint, halved 1..depth times."""
    t = breakpoints[i]
    gaps = []
    if i > 0:
        gaps.append(t - breakpoints[i - 1])
    if i < len(breakpoints) - 1:
        gaps.append(breakpoints[i + 1] - t)
    gap = min(gaps)
    return NbhdBasis(t, tuple(gap / 2 ** k for k in range(1, depth + 1)))


# ---------------------------------------------------------------------------
# cell sampling
# ---------------------------------------------------------------------------


def _cells(u: Fraction, v: Fraction):
    """Open subintervals of (u, v): shrinking ones at both ends first, then a uniform grid."""
    w = v - u
    for m in range(1, END_REFINEMENT + 1):
        d = w / 2 ** m
        yield u, u + d
        yield v - d, v
    for j in range(UNIFORM_CELLS):
        yield u + w * j / UNIFORM_CELLS, u + w * (j + 1) / UNIFORM_CELLS


def _image(p: Piece, u: Fraction, v: Fraction) -> Tuple[ExtReal, ExtReal, bool]:
    """(inf, sup, constant) of p over the open interval (u, v)."""
    a = p.limit(u, RIGHT)
    b = p.limit(v, LEFT)
    if a == b:
        return a, b, True
    return (a, b, False) if a < b else (b, a, False)


def _inside(img, lo: ExtReal, hi: ExtReal) -> bool:
    """Image lies in the open interval (lo, hi)."""
    a, b, const = img
    if const:
        return lo < a < hi
    return a >= lo and b <= hi


def _meets(img, lo: ExtReal, hi: ExtReal) -> bool:
    a, b, const = img
    if const:
        return lo < a < hi
    return a < hi and b > lo


def _side_intervals(t: Fraction, sides, r: Fraction):
    for side, piece in sides:
        if side == LEFT:
            yield piece, t - r, t
        else:
            yield piece, t, t + r


def _pieces_at(f: PWFun, i: int):
    sides = []
    if i > 0:
        sides.append((LEFT, f.pieces[i - 1]))
    if i < len(f.pieces):
        sides.append((RIGHT, f.pieces[i]))
    return sides


def _piece_cells(piece, u, v):
    for cu, cv in _cells(u, v):
        yield piece, cu, cv


class _Neighborhood:
    """Exact images of the sampled cells of one basis neighborhood, built lazily and kept."""

    def __init__(self, t: Fraction, sides, r: Fraction):
        self.radius = r
        intervals = list(_side_intervals(t, sides, r))
        self.whole = [_image(piece, u, v) for piece, u, v in intervals]
        per_side = [_piece_cells(piece, u, v) for piece, u, v in intervals]
        self._pending = (cell for rank in itertools.zip_longest(*per_side) for cell in rank if cell)
        self._cells = []

    def _iter_cells(self):
        yield from self._cells
        for piece, cu, cv in self._pending:
            img = _image(piece, cu, cv)
            self._cells.append(img)
            yield img

    def some_cell_inside(self, lo, hi) -> bool:
        return any(_inside(img, lo, hi) for img in self._iter_cells())

    def meets(self, lo, hi) -> bool:
        # the cells cover each side up to finitely many points, whose values
        # are limits of cell images, so the whole-side image decides this
        return any(_meets(img, lo, hi) for img in self.whole)


def _neighborhoods(t, sides, radii):
    return [_Neighborhood(t, sides, r) for r in radii]


# ---------------------------------------------------------------------------
# line checks
# ---------------------------------------------------------------------------


def oracle_quasicontinuous(f: PWFun, depth: int = DEFAULT_DEPTH) -> Verdict:
    """For every neighborhood (c - eps, c + eps) of a defined value c and every basis
    neighborhood U, search for an open cell G in U with f(G) inside it."""
    witnesses = []
    for i, (t, c) in enumerate(zip(f.breakpoints, f.values)):
        if c is None:
            continue
        limits = [lim for lim in one_sided_limits(f, t) if lim is not None]
        eps_set = sorted({abs(c - lim) / 2 for lim in limits if is_finite(lim) and lim != c} | {Fraction(1)})
        nbhds = _neighborhoods(t, _pieces_at(f, i), default_basis(f.breakpoints, i, depth).radii)
        failure = None
        for eps in eps_set:
            for U in nbhds:
                if not U.some_cell_inside(c - eps, c + eps):
                    failure = (eps, U.radius)
                    break
            if failure:
                break
        if failure:
            eps, r = failure
            witnesses.append(Witness(t, f"no open set within radius {fmt_rat(r)} maps into "
                                        f"({fmt_rat(c - eps)}, {fmt_rat(c + eps)})"))
    return Verdict(not witnesses, witnesses, "quasicontinuity (neighborhood search)")


def _ray_bounds(ray: Ray) -> Tuple[ExtReal, ExtReal]:
    return (ray.threshold, PLUS_INF) if ray.direction == UP else (MINUS_INF, ray.threshold)


def _critical_rays(values: Iterable[Fraction]) -> List[Ray]:
    pts = sorted(set(values))
    thresholds = set(pts)
    thresholds.update((a + b) / 2 for a, b in zip(pts, pts[1:]))
    thresholds.update({pts[0] - 1, pts[-1] + 1})
    return [Ray(d, lam) for lam in sorted(thresholds) for d in (UP, DOWN)]


def _ray_failure(nbhds, value, rays) -> Optional[Tuple[Ray, Fraction]]:
    for ray in rays:
        lo, hi = _ray_bounds(ray)
        for U in nbhds:
            meets = lo < value < hi or U.meets(lo, hi)
            if meets and not U.some_cell_inside(lo, hi):
                return ray, U.radius
    return None


def oracle_hyperplane_minimal(f: PWFun, depth: int = DEFAULT_DEPTH, rays: Optional[Sequence[Ray]] = None) -> Verdict:
    """For every ray W and basis neighborhood U meeting W under f, search for an
    open cell V in U with f(V) inside W."""
    witnesses = []
    for i, (t, c) in enumerate(zip(f.breakpoints, f.values)):
        if c is None:
            continue
        limits = [lim for lim in one_sided_limits(f, t) if lim is not None and is_finite(lim)]
        ray_set = rays if rays is not None else _critical_rays([c, *limits])
        nbhds = _neighborhoods(t, _pieces_at(f, i), default_basis(f.breakpoints, i, depth).radii)
        hit = _ray_failure(nbhds, c, ray_set)
        if hit:
            ray, r = hit
            witnesses.append(Witness(t, f"neighborhood of radius {fmt_rat(r)} meets {ray} "
                                        f"but no open subset maps into it", ray))
    return Verdict(not witnesses, witnesses, "hyperplane minimality (ray search)")


def _band_set(band: Band, u: Fraction, v: Fraction):
    """Bounds of the union of band values over (u, v), with attainment flags."""
    lo, _, lo_const = _image(band.lower, u, v)
    _, hi, hi_const = _image(band.upper, u, v)
    return lo, hi, lo_const, hi_const


def _fattening(value: Sequence[IntervalValue], eps: Fraction):
    comps = []
    for iv in value:
        a, b = iv.lo - eps, iv.hi + eps
        if comps and a < comps[-1][1]:
            comps[-1] = (comps[-1][0], max(comps[-1][1], b))
        else:
            comps.append((a, b))
    return comps


def _band_inside(bset, comps) -> bool:
    lo, hi, lo_att, hi_att = bset
    for a, b in comps:
        ok_lo = lo > a if lo_att else lo >= a
        ok_hi = hi < b if hi_att else hi <= b
        if ok_lo and ok_hi:
            return True
    return False


def _distance(y: Fraction, value: Sequence[IntervalValue]) -> Fraction:
    return min(max(iv.lo - y, y - iv.hi, Fraction(0)) for iv in value)


def oracle_usc(F: MultiMap, depth: int = DEFAULT_DEPTH) -> Verdict:
    """For fattenings V of F(t), search the basis for U with F(U) inside V."""
    witnesses = []
    for i, t in enumerate(F.breakpoints):
        value = F.values[i]
        limit_pts = [y for _, pairs in F.side_limits(i) for pair in pairs for y in pair if is_finite(y)]
        eps_set = sorted({_distance(y, value) / 2 for y in limit_pts if _distance(y, value) > 0} | {Fraction(1)})
        radii = default_basis(F.breakpoints, i, depth).radii
        sides = []
        if i > 0:
            sides.append((LEFT, F.bands[i - 1]))
        if i < F.npieces:
            sides.append((RIGHT, F.bands[i]))
        for eps in eps_set:
            comps = _fattening(value, eps)
            ok = False
            for r in radii:
                if all(_band_inside(_band_set(b, *((t - r, t) if side == LEFT else (t, t + r))), comps)
                       for side, bands in sides for b in bands):
                    ok = True
                    break
            if not ok:
                witnesses.append(Witness(t, f"no neighborhood maps into the {fmt_rat(eps)}-fattening of the value"))
                break
    return Verdict(not witnesses, witnesses, "upper semicontinuity (fattening search)")


# ---------------------------------------------------------------------------
# minimality by exhaustive submap enumeration
# ---------------------------------------------------------------------------


def _piece_options(bands: Tuple[Band, ...]):
    """Nonempty band subsets, each kept band optionally shrunk to one of its edge curves."""
    out = []
    for k in range(1, len(bands) + 1):
        for subset in itertools.combinations(bands, k):
            per_band = []
            for b in subset:
                opts = [b] if b.is_curve() else [b, Band.curve(b.lower), Band.curve(b.upper)]
                per_band.append(opts)
            for combo in itertools.product(*per_band):
                out.append(tuple(combo))
    return out


def _subsets(items):
    items = sorted(items)
    for k in range(1, len(items) + 1):
        yield from itertools.combinations(items, k)


def submap_search(F: MultiMap) -> Verdict:
    """Look for a proper usco submap among the shrinkings of F.

    Candidates keep or shrink bands on each piece and replace each breakpoint
    value by itself or a nonempty set of its critical points (one-sided limits
    of the original bands and interval endpoints). Upper semicontinuity of a
    candidate is local to each breakpoint, so breakpoint choices are searched
    independently for each assignment of piece options.
    """
    usco = is_usco(F)
    if not usco:
        w = usco.witnesses[0]
        raise PreconditionError(f"not usco at {fmt_rat(w.point)}: {w.detail}", usco)
    clause = "minimality (proper usco submap search)"
    options = [_piece_options(bs) for bs in F.bands]
    crit = []
    for i, value in enumerate(F.values):
        pts = {y for _, pairs in F.side_limits(i) for pair in pairs for y in pair}
        pts.update(y for iv in value for y in (iv.lo, iv.hi))
        crit.append(pts)

    for choice in itertools.product(*options):
        piece_proper = any(c != bs for c, bs in zip(choice, F.bands))
        new_values = []
        for i, t in enumerate(F.breakpoints):
            needed, exact = set(), True
            if i > 0:
                for b in choice[i - 1]:
                    lo, hi = b.limits(t, LEFT)
                    exact &= lo == hi
                    needed.add(lo)
            if i < F.npieces:
                for b in choice[i]:
                    lo, hi = b.limits(t, RIGHT)
                    exact &= lo == hi
                    needed.add(lo)
            proper = None
            if exact:
                for S in _subsets(crit[i]):
                    if needed.issubset(S) and points_value(S) != F.values[i]:
                        proper = points_value(S)
                        break
            new_values.append(proper)
        if piece_proper or any(v is not None for v in new_values):
            values = tuple(v if v is not None else F.values[i] for i, v in enumerate(new_values))
            candidate = MultiMap(F.breakpoints, choice, values)
            if is_usco(candidate):
                return Verdict(False, [Witness(F.breakpoints[0], f"proper usco submap {candidate!r}")], clause)
    return Verdict(True, [], clause)


# ---------------------------------------------------------------------------
# plane
# ---------------------------------------------------------------------------


def direction_set(points: Iterable[Point2]) -> List[Point2]:
    """Lattice directions plus pairwise differences of the points and their normals."""
    pts = sorted(set(points))
    dirs = set(LATTICE_DIRECTIONS)
    for p, q in itertools.combinations(pts, 2):
        d = q - p
        for v in (d, Point2(-d.y, d.x)):
            dirs.add(v)
            dirs.add(Point2(-v.x, -v.y))
    return sorted(dirs)


def oracle_planar_hyperplane_minimal(f: Curve2, depth: int = DEFAULT_DEPTH) -> Verdict:
    """Half-plane version of :func:`oracle_hyperplane_minimal`.

    For each sampled direction h the curve is projected to the affine scalar
    function h . p(x), and every open half-plane {h . y > lam} becomes a ray.
    """
    witnesses = []
    for i, (t, c) in enumerate(zip(f.breakpoints, f.values)):
        if c is None:
            continue
        limits = f.limits(i)
        radii = default_basis(f.breakpoints, i, depth).radii
        found = None
        for h in direction_set([c, *limits]):
            sides = []
            if i > 0:
                p = f.pieces[i - 1]
                sides.append((LEFT, Affine(h.dot(p.velocity), h.dot(p.base))))
            if i < len(f.pieces):
                p = f.pieces[i]
                sides.append((RIGHT, Affine(h.dot(p.velocity), h.dot(p.base))))
            rays = [ray for ray in _critical_rays([h.dot(c), *(h.dot(L) for L in limits)]) if ray.direction == UP]
            hit = _ray_failure(_neighborhoods(t, sides, radii), h.dot(c), rays)
            if hit:
                found = (h, hit[0])
                break
        if found:
            h, ray = found
            witnesses.append(Witness(t, f"half-plane {{y : {h} . y > {fmt_rat(ray.threshold)}}} "
                                        f"is met near {fmt_rat(t)} but never entered by an open set"))
    return Verdict(not witnesses, witnesses, "planar hyperplane minimality (half-plane search)")

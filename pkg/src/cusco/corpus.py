"""Seeded random generators for functions, maps, curves and point sets.

Coefficients come from small dyadic grids and breakpoints are at least 1/2
apart, with poles either on a breakpoint (blow-up) or at least 1/2 outside the
piece. This keeps slopes bounded so the oracle's default neighborhood depth
resolves every verdict.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import List, Optional

from .convex2d import AffinePath, Curve2, Point2
from .minimal import minimal_cusco_from
from .pwfun import LEFT, RIGHT, Affine, PWFun, Reciprocal, is_finite, one_sided_limits
from .subdiff import ConvexPWAffine
from .svmap import Band, IntervalValue, MultiMap, normalize_value

F = Fraction
DOMAIN = (F(-2), F(2))
INNER = [F(k, 2) for k in range(-3, 4)]
SLOPES = [F(-2), F(-1), F(-1, 2), F(0), F(0), F(1, 2), F(1), F(2)]
SCALES = [F(-1), F(-1, 2), F(1, 2), F(1)]


def grid(rng: random.Random, lo=-2, hi=2, den=2) -> Fraction:
    return F(rng.randint(lo * den, hi * den), den)


def breaks(rng: random.Random, max_inner: int = 3) -> List[Fraction]:
    inner = sorted(rng.sample(INNER, rng.randint(1, max_inner)))
    return [DOMAIN[0], *inner, DOMAIN[1]]


def piece(rng: random.Random, u: Fraction, v: Fraction, blowup: float = 0.0):
    roll = rng.random()
    if roll < blowup:
        pole = rng.choice([u, v])
        return Reciprocal(pole, rng.choice(SCALES), grid(rng))
    if roll < blowup + 0.25:
        d = rng.choice([F(1, 2), F(1)])
        pole = u - d if rng.random() < 0.5 else v + d
        return Reciprocal(pole, rng.choice(SCALES), grid(rng))
    return Affine(rng.choice(SLOPES), grid(rng))


def _limits(f_pieces, bps, i):
    t = bps[i]
    left = f_pieces[i - 1].limit(t, LEFT) if i > 0 else None
    right = f_pieces[i].limit(t, RIGHT) if i < len(f_pieces) else None
    return left, right


def pwfun(rng: random.Random, blowup: float = 0.15, undefined: float = 0.1) -> PWFun:
    """Arbitrary function: values may be limits, in between, outside, or undefined."""
    bps = breaks(rng)
    pieces = [piece(rng, u, v, blowup) for u, v in zip(bps, bps[1:])]
    values = []
    for i in range(len(bps)):
        lims = [lim for lim in _limits(pieces, bps, i) if lim is not None and is_finite(lim)]
        roll = rng.random()
        if roll < undefined or (not lims and roll < 0.5):
            values.append(None)
        elif lims and roll < 0.55:
            values.append(rng.choice(lims))
        elif len(lims) == 2 and roll < 0.7:
            values.append((lims[0] + lims[1]) / 2)
        else:
            values.append(grid(rng, -3, 3))
    return PWFun(tuple(bps), tuple(pieces), tuple(values))


def qc_subcontinuous(rng: random.Random, undefined: float = 0.0) -> PWFun:
    """Quasicontinuous subcontinuous function (finite limits, values are limits)."""
    bps = breaks(rng)
    pieces = [piece(rng, u, v) for u, v in zip(bps, bps[1:])]
    values = []
    for i in range(len(bps)):
        lims = [lim for lim in _limits(pieces, bps, i) if lim is not None]
        values.append(None if rng.random() < undefined else rng.choice(lims))
    return PWFun(tuple(bps), tuple(pieces), tuple(values))


def _shift(p, c: Fraction):
    if isinstance(p, Affine):
        return Affine(p.slope, p.intercept + c)
    return Reciprocal(p.pole, p.scale, p.offset + c)


def _limit_hull(bands, bps, i):
    """Union of band limit intervals at breakpoint i (finite limits assumed)."""
    t = bps[i]
    out = []
    if i > 0:
        out += [IntervalValue(*b.limits(t, LEFT)) for b in bands[i - 1]]
    if i < len(bands):
        out += [IntervalValue(*b.limits(t, RIGHT)) for b in bands[i]]
    return out


def usco_map(rng: random.Random, convex: bool = False, max_bands: int = 2) -> MultiMap:
    """Random usco map; with ``convex`` a cusco map."""
    bps = breaks(rng)
    bands = []
    for u, v in zip(bps, bps[1:]):
        base = piece(rng, u, v)
        n = 1 if convex else rng.randint(1, max_bands)
        piece_bands, offset = [], F(0)
        for _ in range(n):
            width = rng.choice([F(0), F(0), F(1, 2), F(1)])
            lo = _shift(base, offset)
            piece_bands.append(Band(lo, _shift(lo, width)))
            offset += width + rng.choice([F(1, 2), F(1)])
        bands.append(tuple(piece_bands))
    values = []
    for i in range(len(bps)):
        need = list(_limit_hull(bands, bps, i))
        if rng.random() < 0.3:
            c = need[0].lo - rng.choice([F(1, 2), F(1)]) if rng.random() < 0.5 else need[-1].hi + F(1, 2)
            need.append(IntervalValue.point(c))
        value = normalize_value(need)
        if convex:
            value = (IntervalValue(value[0].lo, value[-1].hi),)
        values.append(value)
    return MultiMap(tuple(bps), tuple(bands), tuple(values))


def minimal_cusco(rng: random.Random) -> MultiMap:
    return minimal_cusco_from(qc_subcontinuous(rng))


def _replace(F_: MultiMap, bands=None, values=None) -> MultiMap:
    return MultiMap(F_.breakpoints, bands if bands is not None else F_.bands,
                    values if values is not None else F_.values)


def mutate_convex(rng: random.Random, M: MultiMap) -> MultiMap:
    """Perturb a convex-valued map so that (usually) minimality breaks."""
    kind = rng.randrange(5)
    i = rng.randrange(len(M.breakpoints))
    values = list(M.values)
    iv = values[i][0]
    if kind == 0:
        values[i] = (IntervalValue(iv.lo - rng.choice([F(1, 2), F(1)]), iv.hi),)
        return _replace(M, values=tuple(values))
    if kind == 1:
        values[i] = (IntervalValue(iv.hi + F(1, 2), iv.hi + F(1)),) if rng.random() < 0.5 \
            else (IntervalValue.point(iv.lo),)
        return _replace(M, values=tuple(values))
    if kind == 2:
        j = rng.randrange(M.npieces)
        band = M.bands[j][0]
        bands = list(M.bands)
        bands[j] = (Band(band.lower, _shift(band.upper, rng.choice([F(1, 2), F(1)]))),)
        return _replace(M, bands=tuple(bands))
    if kind == 3:
        j = rng.randrange(M.npieces)
        u, v = M.breakpoints[j], M.breakpoints[j + 1]
        p = Reciprocal(rng.choice([u, v]), rng.choice(SCALES), grid(rng))
        bands = list(M.bands)
        bands[j] = (Band(p, p),)
        return _replace(M, bands=tuple(bands))
    lo, hi = sorted([grid(rng, -3, 3), grid(rng, -3, 3)])
    values[i] = (IntervalValue(lo, hi),)
    return _replace(M, values=tuple(values))


def convex_map(rng: random.Random) -> MultiMap:
    """Mix of minimal cuscos, cuscos, and deliberately broken convex-valued maps."""
    roll = rng.random()
    if roll < 0.35:
        return minimal_cusco(rng)
    if roll < 0.55:
        return usco_map(rng, convex=True)
    base = minimal_cusco(rng) if roll < 0.85 else usco_map(rng, convex=True)
    return mutate_convex(rng, base)


def convex_pwaffine(rng: random.Random) -> ConvexPWAffine:
    bps = breaks(rng)
    pool = [F(k, 2) for k in range(-6, 7)]
    slopes = sorted(rng.sample(pool, len(bps) - 1))
    return ConvexPWAffine(tuple(bps), tuple(slopes), grid(rng))


def point2(rng: random.Random, lo=-2, hi=2, den=2) -> Point2:
    return Point2(grid(rng, lo, hi, den), grid(rng, lo, hi, den))


def curve2(rng: random.Random) -> Curve2:
    bps = breaks(rng)
    pieces = [AffinePath(point2(rng), point2(rng, -1, 1)) for _ in bps[:-1]]
    values: List[Optional[Point2]] = []
    for i, t in enumerate(bps):
        lims = []
        if i > 0:
            lims.append(pieces[i - 1](t))
        if i < len(pieces):
            lims.append(pieces[i](t))
        roll = rng.random()
        if roll < 0.1:
            values.append(None)
        elif roll < 0.45:
            values.append(rng.choice(lims))
        elif roll < 0.7 and len(lims) == 2:
            w = rng.choice([F(1, 2), F(1, 3), F(3, 4)])
            a, b = lims
            values.append(a.scale(w) + b.scale(1 - w))
        elif roll < 0.85 and len(lims) == 2:
            # on the line through the limits, beyond one end
            a, b = lims
            values.append(a + (b - a).scale(rng.choice([F(-1, 2), F(3, 2)])))
        else:
            values.append(point2(rng))
    return Curve2(tuple(bps), tuple(pieces), tuple(values))


def point_set(rng: random.Random, n: int = 20) -> List[Point2]:
    return [point2(rng, -3, 3, rng.choice([1, 2])) for _ in range(n)]


def compatible_drop(rng: random.Random, f: PWFun) -> List[Fraction]:
    """Breakpoints whose value is a one-sided limit, sampled."""
    out = []
    for t, v in zip(f.breakpoints, f.values):
        if v is None:
            continue
        if v in [lim for lim in one_sided_limits(f, t) if lim is not None] and rng.random() < 0.5:
            out.append(t)
    return out

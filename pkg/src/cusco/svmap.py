"""Set-valued maps on a rational interval, stored as bands between piece curves.

On each open piece a map's value is a sorted union of disjoint bands
``[lower(x), upper(x)]``; at each breakpoint it is a finite union of closed
intervals. Graph closures of piecewise functions are the special case where
every band is a single curve and every breakpoint value is a finite point set.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple

from .analysis import Verdict, Witness, is_subcontinuous
from .pwfun import (
    LEFT,
    MINUS_INF,
    PLUS_INF,
    ExtReal,
    Piece,
    PWFun,
    Reciprocal,
    cluster_set,
    difference_sign_range,
    fmt_ext,
    fmt_piece,
    fmt_rat,
    is_finite,
    locate,
    rat,
    validate_breaks,
    validate_piece,
    RIGHT,
)


class PreconditionError(ValueError):
    """An operation was called on an input violating its precondition."""

    def __init__(self, message: str, verdict: Optional[Verdict] = None):
        super().__init__(message)
        self.verdict = verdict


@dataclass(frozen=True, order=True)
class IntervalValue:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", rat(self.lo))
        object.__setattr__(self, "hi", rat(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{fmt_rat(self.lo)}, {fmt_rat(self.hi)}]")

    @classmethod
    def point(cls, y) -> "IntervalValue":
        return cls(y, y)

    def contains(self, lo: ExtReal, hi: ExtReal) -> bool:
        return self.lo <= lo and hi <= self.hi

    def __str__(self):
        if self.lo == self.hi:
            return fmt_rat(self.lo)
        return f"[{fmt_rat(self.lo)}, {fmt_rat(self.hi)}]"


@dataclass(frozen=True)
class ExtInterval:
    """Closed convex subset of the line with possibly infinite ends."""

    lo: ExtReal
    hi: ExtReal

    def is_compact(self) -> bool:
        return is_finite(self.lo) and is_finite(self.hi)

    def __str__(self):
        if self.lo == self.hi:
            return "{" + fmt_ext(self.lo) + "}"
        left = "(" if not is_finite(self.lo) else "["
        right = ")" if not is_finite(self.hi) else "]"
        return f"{left}{fmt_ext(self.lo)}, {fmt_ext(self.hi)}{right}"


def normalize_value(intervals: Iterable[IntervalValue]) -> Tuple[IntervalValue, ...]:
    """Sort and merge overlapping intervals into a canonical union."""
    items = sorted(intervals)
    if not items:
        raise ValueError("empty value set")
    out = [items[0]]
    for iv in items[1:]:
        last = out[-1]
        if iv.lo <= last.hi:
            out[-1] = IntervalValue(last.lo, max(last.hi, iv.hi))
        else:
            out.append(iv)
    return tuple(out)


def points_value(ys: Iterable) -> Tuple[IntervalValue, ...]:
    return normalize_value(IntervalValue.point(y) for y in ys)


@dataclass(frozen=True)
class Band:
    lower: Piece
    upper: Piece

    @classmethod
    def curve(cls, p: Piece) -> "Band":
        return cls(p, p)

    def is_curve(self) -> bool:
        return self.lower == self.upper

    def limits(self, t: Fraction, side: str) -> Tuple[ExtReal, ExtReal]:
        return self.lower.limit(t, side), self.upper.limit(t, side)

    def at(self, x: Fraction) -> IntervalValue:
        return IntervalValue(self.lower(x), self.upper(x))

    def __str__(self):
        if self.is_curve():
            return fmt_piece(self.lower)
        return f"{fmt_piece(self.lower)} , {fmt_piece(self.upper)}"


@dataclass(frozen=True, eq=False)
class MultiMap:
    breakpoints: Tuple[Fraction, ...]
    bands: Tuple[Tuple[Band, ...], ...]
    values: Tuple[Tuple[IntervalValue, ...], ...]

    def __post_init__(self):
        bps = tuple(rat(t) for t in self.breakpoints)
        bands = tuple(tuple(b) for b in self.bands)
        values = tuple(normalize_value(v) for v in self.values)
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "bands", bands)
        object.__setattr__(self, "values", values)
        validate_breaks(bps, len(bands))
        if len(values) != len(bps):
            raise ValueError("one value set per breakpoint required")
        for i, (piece_bands, u, v) in enumerate(zip(bands, bps, bps[1:])):
            if not piece_bands:
                raise ValueError(f"piece {i} has no band")
            for b in piece_bands:
                validate_piece(b.lower, u, v)
                validate_piece(b.upper, u, v)
                if difference_sign_range(b.lower, b.upper, u, v)[0] < 0:
                    raise ValueError(f"band lower exceeds upper on ({fmt_rat(u)}, {fmt_rat(v)})")
            for b, c in zip(piece_bands, piece_bands[1:]):
                if difference_sign_range(b.upper, c.lower, u, v)[0] <= 0:
                    raise ValueError(f"bands not sorted and disjoint on ({fmt_rat(u)}, {fmt_rat(v)})")

    @property
    def domain(self) -> Tuple[Fraction, Fraction]:
        return self.breakpoints[0], self.breakpoints[-1]

    @property
    def npieces(self) -> int:
        return len(self.bands)

    def value_at(self, x) -> Tuple[IntervalValue, ...]:
        x = rat(x)
        loc = locate(self.breakpoints, x)
        if loc.on_break:
            return self.values[loc.index]
        return tuple(b.at(x) for b in self.bands[loc.index])

    def hull_at(self, x) -> IntervalValue:
        value = self.value_at(x)
        return IntervalValue(value[0].lo, value[-1].hi)

    def side_limits(self, i: int):
        """Per side, the band limit pairs at breakpoint ``i``: ``[(side, [(lo, hi), ...]), ...]``."""
        t = self.breakpoints[i]
        out = []
        if i > 0:
            out.append((LEFT, [b.limits(t, LEFT) for b in self.bands[i - 1]]))
        if i < self.npieces:
            out.append((RIGHT, [b.limits(t, RIGHT) for b in self.bands[i]]))
        return out

    def is_single_valued_pieces(self) -> bool:
        return all(len(bs) == 1 and bs[0].is_curve() for bs in self.bands)

    def is_convex_valued(self) -> bool:
        return all(len(bs) == 1 for bs in self.bands) and all(len(v) == 1 for v in self.values)

    def _key(self):
        c = canonical(self)
        return (c.breakpoints, c.bands, c.values)

    def __eq__(self, other):
        if not isinstance(other, MultiMap):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        bands = [[str(b) for b in bs] for bs in self.bands]
        vals = [[str(iv) for iv in v] for v in self.values]
        return f"{type(self).__name__}(breakpoints={[fmt_rat(t) for t in self.breakpoints]}, bands={bands}, values={vals})"


class GraphMap(MultiMap):
    """Closure of a function graph: single curves on pieces, finite point sets at breakpoints."""

    def __post_init__(self):
        super().__post_init__()
        if not self.is_single_valued_pieces():
            raise ValueError("graph map pieces must be single curves")
        if any(iv.lo != iv.hi for v in self.values for iv in v):
            raise ValueError("graph map breakpoint values must be finite point sets")

    def curves(self) -> Tuple[Piece, ...]:
        return tuple(bs[0].lower for bs in self.bands)


def _continuous_value(bands: Sequence[Band], t: Fraction) -> Optional[Tuple[IntervalValue, ...]]:
    for b in bands:
        for p in (b.lower, b.upper):
            if isinstance(p, Reciprocal) and p.pole == t:
                return None
    return normalize_value(b.at(t) for b in bands)


def canonical(F: MultiMap) -> MultiMap:
    """Merge adjacent pieces with equal bands across breakpoints where the map is continuous."""
    bps, bands, values = [F.breakpoints[0]], [], [F.values[0]]
    for i, bs in enumerate(F.bands):
        t = F.breakpoints[i + 1]
        if bands and bands[-1] == bs and _continuous_value(bs, bps[-1]) == values[-1]:
            bps[-1] = t
            values[-1] = F.values[i + 1]
        else:
            bands.append(bs)
            bps.append(t)
            values.append(F.values[i + 1])
    if len(bands) == F.npieces:
        return F
    return type(F)(tuple(bps), tuple(bands), tuple(values))


def refine_map(F: MultiMap, points: Iterable) -> MultiMap:
    """Insert extra breakpoints, taking the band values there."""
    a, b = F.domain
    extra = sorted({rat(p) for p in points if a < rat(p) < b} - set(F.breakpoints))
    if not extra:
        return F
    bps, bands, values = [F.breakpoints[0]], [], [F.values[0]]
    j = 0
    for i, bs in enumerate(F.bands):
        hi = F.breakpoints[i + 1]
        while j < len(extra) and extra[j] < hi:
            bands.append(bs)
            bps.append(extra[j])
            values.append(tuple(band.at(extra[j]) for band in bs))
            j += 1
        bands.append(bs)
        bps.append(hi)
        values.append(F.values[i + 1])
    return type(F)(tuple(bps), tuple(bands), tuple(values))


def map_from_bounds(lower: PWFun, upper: PWFun) -> MultiMap:
    """Convex-valued map x -> [lower(x), upper(x)] on the common refinement."""
    from .pwfun import refine

    if lower.domain != upper.domain:
        raise ValueError("lower and upper functions must share a domain")
    lo = refine(lower, upper.breakpoints)
    hi = refine(upper, lower.breakpoints)
    values = []
    for t, a, b in zip(lo.breakpoints, lo.values, hi.values):
        if a is None or b is None:
            raise ValueError(f"bounds undefined at {fmt_rat(t)}")
        values.append((IntervalValue(a, b),))
    return MultiMap(lo.breakpoints, tuple((Band(p, q),) for p, q in zip(lo.pieces, hi.pieces)), tuple(values))


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------


def graph_closure(f: PWFun) -> GraphMap:
    sub = is_subcontinuous(f)
    if not sub:
        w = sub.witnesses[0]
        raise PreconditionError(f"not subcontinuous at {fmt_rat(w.point)}: {w.detail}", sub)
    values = tuple(points_value(cluster_set(f, t).finite_members()) for t in f.breakpoints)
    return GraphMap(f.breakpoints, tuple((Band.curve(p),) for p in f.pieces), values)


def convexify(G: MultiMap) -> MultiMap:
    bands = tuple((Band(bs[0].lower, bs[-1].upper),) for bs in G.bands)
    values = tuple((IntervalValue(v[0].lo, v[-1].hi),) for v in G.values)
    return MultiMap(G.breakpoints, bands, values)


def csc(f: PWFun, x) -> ExtInterval:
    """Intersection over neighborhoods V of x of the closed convex hull of f(V)."""
    members = cluster_set(f, x).members()
    return ExtInterval(members[0], members[-1])


def _find_component(value: Sequence[IntervalValue], lo: ExtReal, hi: ExtReal) -> bool:
    return any(iv.contains(lo, hi) for iv in value)


def is_usco(F: MultiMap) -> Verdict:
    witnesses = []
    for i, t in enumerate(F.breakpoints):
        for side, pairs in F.side_limits(i):
            for lo, hi in pairs:
                if not (is_finite(lo) and is_finite(hi)):
                    witnesses.append(Witness(t, f"{side} values escape every bounded set (limit {fmt_ext(lo)}..{fmt_ext(hi)})"))
                elif not _find_component(F.values[i], lo, hi):
                    shown = " ".join(str(iv) for iv in F.values[i])
                    witnesses.append(Witness(t, f"{side} limit [{fmt_rat(lo)}, {fmt_rat(hi)}] not inside value {shown}"))
    return Verdict(not witnesses, witnesses, "usco: bounded limits contained in the value")


def is_cusco(F: MultiMap) -> Verdict:
    v = is_usco(F)
    witnesses = list(v.witnesses)
    for i, bs in enumerate(F.bands):
        if len(bs) > 1:
            mid = (F.breakpoints[i] + F.breakpoints[i + 1]) / 2
            witnesses.append(Witness(mid, f"{len(bs)} disjoint bands: value not convex"))
    for t, value in zip(F.breakpoints, F.values):
        if len(value) > 1:
            witnesses.append(Witness(t, f"value {' '.join(map(str, value))} not convex"))
    return Verdict(not witnesses, witnesses, "cusco: usco with convex values")


def has_closed_graph(F: MultiMap) -> Verdict:
    witnesses = []
    for i, t in enumerate(F.breakpoints):
        for side, pairs in F.side_limits(i):
            for lo, hi in pairs:
                if lo == hi and not is_finite(lo):
                    continue
                if lo == MINUS_INF or hi == PLUS_INF:
                    witnesses.append(Witness(t, f"{side} limit points unbounded ({fmt_ext(lo)}..{fmt_ext(hi)})"))
                elif not _find_component(F.values[i], lo, hi):
                    witnesses.append(Witness(t, f"{side} limit points [{fmt_rat(lo)}, {fmt_rat(hi)}] missing from value"))
    return Verdict(not witnesses, witnesses, "closed graph: finite limit points belong to the value")


def envelopes(F: MultiMap) -> Tuple[PWFun, PWFun]:
    inf_f = PWFun(F.breakpoints, tuple(bs[0].lower for bs in F.bands), tuple(v[0].lo for v in F.values))
    sup_f = PWFun(F.breakpoints, tuple(bs[-1].upper for bs in F.bands), tuple(v[-1].hi for v in F.values))
    return inf_f, sup_f


def contained_in(G: MultiMap, F: MultiMap) -> Verdict:
    """Pointwise containment G(x) subset of F(x) for all x."""
    if G.domain != F.domain:
        raise ValueError("maps on different domains")
    g = refine_map(G, F.breakpoints)
    f = refine_map(F, G.breakpoints)
    witnesses = []
    for t, gv, fv in zip(g.breakpoints, g.values, f.values):
        for iv in gv:
            if not _find_component(fv, iv.lo, iv.hi):
                witnesses.append(Witness(t, f"{iv} not inside {' '.join(map(str, fv))}"))
    for i, (gb, fb) in enumerate(zip(g.bands, f.bands)):
        u, v = g.breakpoints[i], g.breakpoints[i + 1]
        for band in gb:
            if not any(difference_sign_range(fband.lower, band.lower, u, v)[0] >= 0
                       and difference_sign_range(band.upper, fband.upper, u, v)[0] >= 0 for fband in fb):
                witnesses.append(Witness((u + v) / 2, f"band {band} leaves the containing map"))
    return Verdict(not witnesses, witnesses, "containment")

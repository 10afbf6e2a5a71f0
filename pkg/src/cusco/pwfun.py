"""Piecewise functions on a compact rational interval.

Coordinates are :class:`fractions.Fraction`. One-sided limits live in the
extended reals, represented as a ``Fraction`` or ``math.inf``/``-math.inf``;
``Fraction`` compares exactly against float infinities, so ``min``/``max`` and
ordering work without a wrapper type.

An undefined breakpoint value is ``None``.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple, Union

Rat = Fraction
ExtReal = Union[Fraction, float]

PLUS_INF = math.inf
MINUS_INF = -math.inf

LEFT = "left"
RIGHT = "right"


class DomainError(ValueError):
    """A point lies outside the domain of a function or map."""


def rat(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction (never floats)."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text or any(c in text for c in ".eE"):
            raise ValueError(f"not an exact rational: {value!r}")
        return Fraction(text)
    raise TypeError(f"not an exact rational: {value!r}")


def fmt_rat(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def fmt_ext(v: Optional[ExtReal]) -> str:
    if v is None:
        return "none"
    if v == PLUS_INF:
        return "+inf"
    if v == MINUS_INF:
        return "-inf"
    return fmt_rat(v)


def is_finite(v: Optional[ExtReal]) -> bool:
    return v is not None and not (isinstance(v, float) and math.isinf(v))


# ---------------------------------------------------------------------------
# piece expressions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Affine:
    slope: Fraction
    intercept: Fraction

    def __post_init__(self):
        object.__setattr__(self, "slope", rat(self.slope))
        object.__setattr__(self, "intercept", rat(self.intercept))

    def __call__(self, x: Fraction) -> Fraction:
        return self.slope * x + self.intercept

    def limit(self, t: Fraction, side: str) -> ExtReal:
        return self(t)

    def fraction_form(self):
        """(numerator, denominator) coefficient lists, lowest degree first."""
        return [self.intercept, self.slope], [Fraction(1)]

    def is_constant(self) -> bool:
        return self.slope == 0


@dataclass(frozen=True)
class Reciprocal:
    """``scale / (x - pole) + offset``; ``scale`` must be nonzero."""

    pole: Fraction
    scale: Fraction
    offset: Fraction

    def __post_init__(self):
        for name in ("pole", "scale", "offset"):
            object.__setattr__(self, name, rat(getattr(self, name)))
        if self.scale == 0:
            raise ValueError("reciprocal piece with zero scale; use an affine constant")

    def __call__(self, x: Fraction) -> Fraction:
        if x == self.pole:
            raise DomainError(f"reciprocal piece evaluated at its pole {fmt_rat(x)}")
        return self.scale / (x - self.pole) + self.offset

    def limit(self, t: Fraction, side: str) -> ExtReal:
        """Limit as x -> t from ``side`` (``LEFT`` means x < t)."""
        if t != self.pole:
            return self(t)
        positive = (self.scale > 0) == (side == RIGHT)
        return PLUS_INF if positive else MINUS_INF

    def fraction_form(self):
        # offset*(x - pole) + scale over (x - pole)
        return [self.scale - self.offset * self.pole, self.offset], [-self.pole, Fraction(1)]

    def is_constant(self) -> bool:
        return False


Piece = Union[Affine, Reciprocal]


def reciprocal(pole, scale, offset) -> Piece:
    """Build a reciprocal piece, degrading to a constant when ``scale == 0``."""
    scale = rat(scale)
    if scale == 0:
        return Affine(0, rat(offset))
    return Reciprocal(pole, scale, offset)


def fmt_piece(p: Piece) -> str:
    if isinstance(p, Affine):
        return f"affine {fmt_rat(p.slope)} {fmt_rat(p.intercept)}"
    return f"recip {fmt_rat(p.pole)} {fmt_rat(p.scale)} {fmt_rat(p.offset)}"


def piece_range(p: Piece, u: Fraction, v: Fraction) -> Tuple[ExtReal, ExtReal]:
    """Bounds (inf, sup) of ``p`` over the open interval (u, v).

    Pieces are monotone on their interval, so the bounds are the limits at the
    two ends. For a nonconstant piece the image is the open interval between
    them; for a constant piece it is a single point.
    """
    a = p.limit(u, RIGHT)
    b = p.limit(v, LEFT)
    return (a, b) if a <= b else (b, a)


def _pmul(p: Sequence[Fraction], q: Sequence[Fraction]):
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def _psub(p, q):
    n = max(len(p), len(q))
    p = list(p) + [Fraction(0)] * (n - len(p))
    q = list(q) + [Fraction(0)] * (n - len(q))
    out = [a - b for a, b in zip(p, q)]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _peval(p, x):
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def difference_sign_range(lo: Piece, hi: Piece, u: Fraction, v: Fraction) -> Tuple[int, int]:
    """Sign range of ``hi - lo`` on the open interval (u, v).

    Returns ``(min_sign, max_sign)`` over the interval, each in {-1, 0, 1}.
    The difference is N(x)/D(x) with N of degree <= 2 and D of constant sign,
    so checking N at the ends and at the vertex is exact.
    """
    nh, dh = hi.fraction_form()
    nl, dl = lo.fraction_form()
    num = _psub(_pmul(nh, dl), _pmul(nl, dh))
    den = _pmul(dh, dl)
    mid = (u + v) / 2
    dsign = 1 if _peval(den, mid) > 0 else -1
    num = [c * dsign for c in num]
    if all(c == 0 for c in num):
        return 0, 0
    # extrema of N on [u, v] sit at the ends or the vertex; an extremum of 0
    # reached only at an end leaves the open interval strictly signed
    vertex_val = None
    if len(num) == 3 and num[2] != 0:
        vertex = -num[1] / (2 * num[2])
        if u < vertex < v:
            vertex_val = _peval(num, vertex)
    probes = [_peval(num, u), _peval(num, v)]
    if vertex_val is not None:
        probes.append(vertex_val)

    def sign(extreme, if_zero_at_end):
        if extreme > 0:
            return 1
        if extreme < 0:
            return -1
        return 0 if vertex_val == 0 else if_zero_at_end

    return sign(min(probes), 1), sign(max(probes), -1)


# ---------------------------------------------------------------------------
# PWFun
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClusterSet:
    left: Optional[ExtReal]
    right: Optional[ExtReal]
    value: Optional[Fraction]

    def finite_members(self) -> Tuple[Fraction, ...]:
        vals = {v for v in (self.left, self.right, self.value) if is_finite(v)}
        return tuple(sorted(vals))

    def members(self) -> Tuple[ExtReal, ...]:
        return tuple(sorted({v for v in (self.left, self.right, self.value) if v is not None}))


@dataclass(frozen=True)
class CofiniteSet:
    """All of [lo, hi] except finitely many points."""

    lo: Fraction
    hi: Fraction
    excluded: frozenset

    def __contains__(self, x) -> bool:
        x = rat(x)
        return self.lo <= x <= self.hi and x not in self.excluded

    def __str__(self):
        pts = ", ".join(fmt_rat(t) for t in sorted(self.excluded))
        return f"[{fmt_rat(self.lo)}, {fmt_rat(self.hi)}] minus {{{pts}}}"


def validate_breaks(breakpoints: Sequence[Fraction], npieces: int) -> None:
    if len(breakpoints) < 2:
        raise ValueError("need at least two breakpoints")
    for s, t in zip(breakpoints, breakpoints[1:]):
        if not s < t:
            raise ValueError(f"breakpoints not strictly increasing at {fmt_rat(s)}, {fmt_rat(t)}")
    if npieces != len(breakpoints) - 1:
        raise ValueError(f"{len(breakpoints)} breakpoints need {len(breakpoints) - 1} pieces, got {npieces}")


def validate_piece(p: Piece, u: Fraction, v: Fraction) -> None:
    if isinstance(p, Reciprocal) and u < p.pole < v:
        raise ValueError(f"pole {fmt_rat(p.pole)} inside piece ({fmt_rat(u)}, {fmt_rat(v)})")


class _Located:
    __slots__ = ("on_break", "index")

    def __init__(self, on_break: bool, index: int):
        self.on_break = on_break
        self.index = index


def locate(breakpoints: Sequence[Fraction], x: Fraction) -> _Located:
    """Breakpoint index if ``x`` is a breakpoint, else the index of its piece."""
    if not breakpoints[0] <= x <= breakpoints[-1]:
        raise DomainError(
            f"{fmt_rat(x)} outside domain [{fmt_rat(breakpoints[0])}, {fmt_rat(breakpoints[-1])}]"
        )
    i = bisect.bisect_left(breakpoints, x)
    if i < len(breakpoints) and breakpoints[i] == x:
        return _Located(True, i)
    return _Located(False, i - 1)


@dataclass(frozen=True, eq=False)
class PWFun:
    """Piecewise function: ``pieces[i]`` lives on (breakpoints[i], breakpoints[i+1])."""

    breakpoints: Tuple[Fraction, ...]
    pieces: Tuple[Piece, ...]
    values: Tuple[Optional[Fraction], ...]

    def __post_init__(self):
        bps = tuple(rat(t) for t in self.breakpoints)
        vals = tuple(None if v is None else rat(v) for v in self.values)
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "pieces", tuple(self.pieces))
        object.__setattr__(self, "values", vals)
        validate_breaks(bps, len(self.pieces))
        if len(vals) != len(bps):
            raise ValueError("one breakpoint value (or None) per breakpoint required")
        for p, u, v in zip(self.pieces, bps, bps[1:]):
            validate_piece(p, u, v)

    @classmethod
    def from_pieces(cls, breakpoints, pieces, values=None) -> "PWFun":
        """Build a function; ``values`` defaults to the right limit (left at the end)."""
        bps = [rat(t) for t in breakpoints]
        if values is None:
            values = [pieces[i].limit(bps[i], RIGHT) if i < len(pieces) else pieces[-1].limit(bps[-1], LEFT)
                      for i in range(len(bps))]
            values = [v if is_finite(v) else None for v in values]
        return cls(tuple(bps), tuple(pieces), tuple(values))

    @property
    def domain(self) -> Tuple[Fraction, Fraction]:
        return self.breakpoints[0], self.breakpoints[-1]

    def is_total(self) -> bool:
        return all(v is not None for v in self.values)

    def breakpoint_index(self, t) -> int:
        t = rat(t)
        loc = locate(self.breakpoints, t)
        if not loc.on_break:
            raise ValueError(f"{fmt_rat(t)} is not a breakpoint")
        return loc.index

    def __call__(self, x) -> Optional[Fraction]:
        return eval_at(self, x)

    # equality is equality of canonical forms
    def _key(self):
        c = canonical(self)
        return (c.breakpoints, c.pieces, c.values)

    def __eq__(self, other):
        if not isinstance(other, PWFun):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"PWFun(breakpoints={[fmt_rat(t) for t in self.breakpoints]}, pieces={list(self.pieces)}, values={[None if v is None else fmt_rat(v) for v in self.values]})"


def eval_at(f: PWFun, x) -> Optional[Fraction]:
    x = rat(x)
    loc = locate(f.breakpoints, x)
    if loc.on_break:
        return f.values[loc.index]
    return f.pieces[loc.index](x)


def one_sided_limits(f: PWFun, t) -> Tuple[Optional[ExtReal], Optional[ExtReal]]:
    """Limits of ``f`` at breakpoint ``t`` from the left and right (None where no side exists)."""
    i = f.breakpoint_index(t)
    t = f.breakpoints[i]
    left = f.pieces[i - 1].limit(t, LEFT) if i > 0 else None
    right = f.pieces[i].limit(t, RIGHT) if i < len(f.pieces) else None
    return left, right


def cluster_set(f: PWFun, x) -> ClusterSet:
    x = rat(x)
    loc = locate(f.breakpoints, x)
    if not loc.on_break:
        v = f.pieces[loc.index](x)
        return ClusterSet(v, v, v)
    left, right = one_sided_limits(f, x)
    return ClusterSet(left, right, f.values[loc.index])


def _continuous_at(f: PWFun, i: int) -> bool:
    value = f.values[i]
    if value is None:
        return False
    left, right = one_sided_limits(f, f.breakpoints[i])
    return all(lim is None or lim == value for lim in (left, right))


def continuity_points(f: PWFun) -> CofiniteSet:
    excluded = frozenset(t for i, t in enumerate(f.breakpoints) if not _continuous_at(f, i))
    return CofiniteSet(f.breakpoints[0], f.breakpoints[-1], excluded)


def restrict(f: PWFun, drop: Iterable) -> PWFun:
    """Make ``f`` undefined at the breakpoints in ``drop``."""
    drop = {rat(t) for t in drop}
    missing = drop.difference(f.breakpoints)
    if missing:
        raise ValueError(f"not breakpoints: {sorted(fmt_rat(t) for t in missing)}")
    values = tuple(None if t in drop else v for t, v in zip(f.breakpoints, f.values))
    return PWFun(f.breakpoints, f.pieces, values)


def refine(f: PWFun, points: Iterable) -> PWFun:
    """Insert extra breakpoints; the new breakpoints take the piece value."""
    a, b = f.domain
    extra = sorted({rat(p) for p in points if a < rat(p) < b} - set(f.breakpoints))
    if not extra:
        return f
    bps, pieces, values = [f.breakpoints[0]], [], [f.values[0]]
    j = 0
    for i, p in enumerate(f.pieces):
        hi = f.breakpoints[i + 1]
        while j < len(extra) and extra[j] < hi:
            pieces.append(p)
            bps.append(extra[j])
            values.append(p(extra[j]))
            j += 1
        pieces.append(p)
        bps.append(hi)
        values.append(f.values[i + 1])
    return PWFun(tuple(bps), tuple(pieces), tuple(values))


def canonical(f: PWFun) -> PWFun:
    """Merge adjacent identical pieces across defined, continuous breakpoints."""
    bps, pieces, values = [f.breakpoints[0]], [], [f.values[0]]
    for i, p in enumerate(f.pieces):
        t = f.breakpoints[i + 1]
        if pieces and pieces[-1] == p and values[-1] is not None and _mergeable(p, bps[-1], values[-1]):
            bps[-1] = t
            values[-1] = f.values[i + 1]
        else:
            pieces.append(p)
            bps.append(t)
            values.append(f.values[i + 1])
    if len(pieces) == len(f.pieces):
        return f
    return PWFun(tuple(bps), tuple(pieces), tuple(values))


def _mergeable(p: Piece, t: Fraction, value: Fraction) -> bool:
    if isinstance(p, Reciprocal) and p.pole == t:
        return False
    return p(t) == value


def constant(c, a=-1, b=1) -> PWFun:
    return PWFun.from_pieces([a, b], [Affine(0, c)])

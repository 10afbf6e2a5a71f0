"""Quasicontinuity, subcontinuity and hyperplane minimality of piecewise functions.

For affine/reciprocal pieces every cluster value at a breakpoint is a one-sided
limit, so each property reduces to a comparison between the breakpoint value
and its one-sided limits:

* quasicontinuous: a defined value equals some finite one-sided limit;
* subcontinuous: every one-sided limit is finite;
* hyperplane minimal: a defined value lies between the smallest and largest
  one-sided limit (extended-real order), and equals the limit at a domain end.

:mod:`cusco.oracle` re-derives all three from the neighborhood definitions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

from .pwfun import ExtReal, PWFun, fmt_ext, fmt_rat, is_finite, one_sided_limits

UP = "up"
DOWN = "down"


@dataclass(frozen=True)
class Ray:
    """Open half-line: ``(threshold, inf)`` for UP, ``(-inf, threshold)`` for DOWN."""

    direction: str
    threshold: Fraction

    def __contains__(self, y: ExtReal) -> bool:
        return y > self.threshold if self.direction == UP else y < self.threshold

    def __str__(self):
        t = fmt_rat(self.threshold)
        return f"({t}, +inf)" if self.direction == UP else f"(-inf, {t})"


@dataclass(frozen=True)
class Witness:
    point: Fraction
    detail: str
    ray: Optional[Ray] = None

    def as_dict(self):
        out = {"point": fmt_rat(self.point), "detail": self.detail}
        if self.ray is not None:
            out["ray"] = {"direction": self.ray.direction, "threshold": fmt_rat(self.ray.threshold)}
        return out


@dataclass
class Verdict:
    """Outcome of a check. A false verdict always carries witnesses."""

    holds: bool
    witnesses: List[Witness] = field(default_factory=list)
    clause: str = ""

    def __bool__(self):
        return self.holds

    def __post_init__(self):
        if not self.holds and not self.witnesses:
            raise ValueError("a failing verdict needs at least one witness")

    def as_dict(self):
        return {
            "holds": self.holds,
            "clause": self.clause,
            "witnesses": [w.as_dict() for w in self.witnesses],
        }


def _sides(f: PWFun, t):
    left, right = one_sided_limits(f, t)
    return [lim for lim in (left, right) if lim is not None]


def is_quasicontinuous(f: PWFun) -> Verdict:
    witnesses = []
    for t, value in zip(f.breakpoints, f.values):
        if value is None:
            continue
        limits = _sides(f, t)
        if not any(is_finite(lim) and lim == value for lim in limits):
            shown = ", ".join(fmt_ext(lim) for lim in limits)
            witnesses.append(Witness(t, f"value {fmt_rat(value)} is not a one-sided limit ({shown})"))
    return Verdict(not witnesses, witnesses, "quasicontinuity: value is a one-sided limit")


def is_subcontinuous(f: PWFun) -> Verdict:
    witnesses = []
    for t in f.breakpoints:
        left, right = one_sided_limits(f, t)
        for name, lim in (("left", left), ("right", right)):
            if lim is not None and not is_finite(lim):
                witnesses.append(Witness(t, f"{name} limit {fmt_ext(lim)}"))
    return Verdict(not witnesses, witnesses, "subcontinuity: all one-sided limits finite")


def _separating_ray(value: Fraction, limits) -> Ray:
    lo, hi = min(limits), max(limits)
    if value > hi:
        # values near t stay below the threshold; unit margin when there is room
        mid = (hi + value) / 2 if is_finite(hi) else value - 1
        step = hi + 1 if is_finite(hi) else mid
        return Ray(UP, min(step, mid))
    mid = (lo + value) / 2 if is_finite(lo) else value + 1
    step = lo - 1 if is_finite(lo) else mid
    return Ray(DOWN, max(step, mid))


def is_hyperplane_minimal(f: PWFun) -> Verdict:
    witnesses = []
    for t, value in zip(f.breakpoints, f.values):
        if value is None:
            continue
        limits = _sides(f, t)
        if len(limits) == 1:
            ok = limits[0] == value
        else:
            ok = min(limits) <= value <= max(limits)
        if not ok:
            shown = ", ".join(fmt_ext(lim) for lim in limits)
            witnesses.append(Witness(t, f"value {fmt_rat(value)} outside one-sided limits ({shown})",
                                     _separating_ray(value, limits)))
    return Verdict(not witnesses, witnesses, "hyperplane minimality: value between one-sided limits")

"""Minimal usco/cusco maps: construction, recognition, extraction and extreme selections."""

from __future__ import annotations

from typing import Iterable

from .analysis import Verdict, Witness, is_quasicontinuous, is_subcontinuous
from .pwfun import PWFun, continuity_points, fmt_rat, rat, refine, restrict
from .svmap import (
    GraphMap,
    MultiMap,
    PreconditionError,
    contained_in,
    convexify,
    envelopes,
    graph_closure,
    has_closed_graph,
    is_cusco,
    is_usco,
    points_value,
)

INF = "inf"
SUP = "sup"


def _require(verdict: Verdict, what: str):
    if not verdict:
        w = verdict.witnesses[0]
        raise PreconditionError(f"{what} fails at {fmt_rat(w.point)}: {w.detail}", verdict)


def minimal_cusco_from(f: PWFun) -> MultiMap:
    """The minimal cusco x -> co(cl f(x)) generated by a quasicontinuous subcontinuous f.

    ``f`` may be densely defined (undefined at some breakpoints).
    """
    _require(is_subcontinuous(f), "subcontinuity")
    _require(is_quasicontinuous(f), "quasicontinuity")
    return convexify(graph_closure(f))


def is_minimal_usco(F: MultiMap) -> Verdict:
    """Usco, a single curve on every piece, and breakpoint values exactly the one-sided limits."""
    usco = is_usco(F)
    if not usco:
        return Verdict(False, usco.witnesses, "minimal usco: usco")
    witnesses = []
    for i, bs in enumerate(F.bands):
        if len(bs) != 1 or not bs[0].is_curve():
            mid = (F.breakpoints[i] + F.breakpoints[i + 1]) / 2
            witnesses.append(Witness(mid, "value is not a single point on an open piece"))
    clause = "minimal usco: closure of a quasicontinuous subcontinuous selection"
    if witnesses:
        return Verdict(False, witnesses, clause)
    for i, t in enumerate(F.breakpoints):
        limits = {lo for _, pairs in F.side_limits(i) for lo, _ in pairs}
        if F.values[i] != points_value(limits):
            shown = " ".join(map(str, F.values[i]))
            witnesses.append(Witness(t, f"value {shown} is not the set of one-sided limits "
                                        f"{{{', '.join(fmt_rat(y) for y in sorted(limits))}}}"))
    return Verdict(not witnesses, witnesses, clause)


def closure_is_minimal_usco(f: PWFun) -> Verdict:
    """Whether the graph closure of a subcontinuous ``f`` is a minimal usco."""
    return is_minimal_usco(graph_closure(f))


def is_minimal_cusco(F: MultiMap) -> Verdict:
    """Convex compact values, closed graph, envelopes quasicontinuous and subcontinuous,
    and the graph closures of the two envelopes coincide."""
    clause = "minimal cusco: closed graph, regular envelopes with equal closures"
    witnesses = []
    for i, bs in enumerate(F.bands):
        if len(bs) > 1:
            witnesses.append(Witness((F.breakpoints[i] + F.breakpoints[i + 1]) / 2, "value not convex"))
    for t, v in zip(F.breakpoints, F.values):
        if len(v) > 1:
            witnesses.append(Witness(t, "value not convex"))
    if witnesses:
        return Verdict(False, witnesses, clause)
    closed = has_closed_graph(F)
    if not closed:
        return Verdict(False, closed.witnesses, clause)
    inf_f, sup_f = envelopes(F)
    for name, env in ((INF, inf_f), (SUP, sup_f)):
        for check in (is_quasicontinuous, is_subcontinuous):
            v = check(env)
            if not v:
                return Verdict(False, [Witness(w.point, f"{name} envelope: {w.detail}") for w in v.witnesses], clause)
    gi, gs = graph_closure(inf_f), graph_closure(sup_f)
    if gi != gs:
        return Verdict(False, _closure_difference(gi, gs), clause)
    return Verdict(True, [], clause)


def _closure_difference(G: GraphMap, H: GraphMap):
    pts = sorted(set(G.breakpoints) | set(H.breakpoints))
    probes = set(pts) | {(a + b) / 2 for a, b in zip(pts, pts[1:])}
    out = []
    for x in sorted(probes):
        if G.value_at(x) != H.value_at(x):
            out.append(Witness(x, f"closure of inf envelope {' '.join(map(str, G.value_at(x)))} "
                                  f"differs from closure of sup envelope {' '.join(map(str, H.value_at(x)))}"))
    return out or [Witness(pts[0], "envelope closures differ")]


def is_minimal_cusco_by_hulls(F: MultiMap) -> Verdict:
    """Envelopes quasicontinuous and subcontinuous with F = co cl(sup F) = co cl(inf F)."""
    clause = "minimal cusco: hull of either envelope closure"
    inf_f, sup_f = envelopes(F)
    for name, env in ((INF, inf_f), (SUP, sup_f)):
        for check in (is_quasicontinuous, is_subcontinuous):
            v = check(env)
            if not v:
                return Verdict(False, [Witness(w.point, f"{name} envelope: {w.detail}") for w in v.witnesses], clause)
    for name, env in ((SUP, sup_f), (INF, inf_f)):
        if convexify(graph_closure(env)) != F:
            return Verdict(False, [Witness(F.breakpoints[0], f"F differs from the hull of the {name} envelope closure")], clause)
    return Verdict(True, [], clause)


def is_minimal_cusco_by_extraction(F: MultiMap, variant: str = INF) -> Verdict:
    """F equals co cl of its envelope restricted to the envelope's continuity points."""
    clause = f"minimal cusco: equals the extracted minimal cusco ({variant} path)"
    env = envelopes(F)[0 if variant == INF else 1]
    dense = restrict(env, continuity_points(env).excluded)
    try:
        extracted = convexify(graph_closure(dense))
    except PreconditionError as exc:
        return Verdict(False, exc.verdict.witnesses, clause)
    if extracted != F:
        return Verdict(False, [Witness(F.breakpoints[0], "F differs from its extracted minimal cusco")], clause)
    return Verdict(True, [], clause)


def _envelope_closure(F: MultiMap, variant: str) -> GraphMap:
    if variant not in (INF, SUP):
        raise ValueError(f"variant must be {INF!r} or {SUP!r}")
    env = envelopes(F)[0 if variant == INF else 1]
    return graph_closure(restrict(env, continuity_points(env).excluded))


def minimal_usco_within(F: MultiMap, variant: str = INF) -> GraphMap:
    """A minimal usco inside the usco F: closure of an envelope restricted to its continuity points."""
    _require(is_usco(F), "usco")
    return _envelope_closure(F, variant)


def minimal_cusco_within(F: MultiMap, variant: str = INF) -> MultiMap:
    _require(is_cusco(F), "cusco")
    return convexify(_envelope_closure(F, variant))


def unique_minimal_usco(F: MultiMap) -> GraphMap:
    _require(is_minimal_cusco(F), "minimal cusco")
    inf_f, sup_f = envelopes(F)
    G = graph_closure(sup_f)
    if G != graph_closure(inf_f):
        raise AssertionError("envelope closures of a minimal cusco differ")
    assert is_minimal_usco(G) and contained_in(G, F)
    return G


def extreme_selection(F: MultiMap, switches: Iterable) -> PWFun:
    """Selection following inf F, flipping to sup F (and back) at each switch point.

    A switch point takes the envelope of the stretch it starts.
    """
    _require(is_cusco(F), "cusco")
    a, b = F.domain
    switches = sorted({rat(s) for s in switches})
    if any(not a <= s <= b for s in switches):
        raise ValueError("switch points must lie in the domain")
    inf_f, sup_f = envelopes(F)
    lo = refine(inf_f, switches)
    hi = refine(sup_f, switches)

    def use_sup(x):
        return sum(1 for s in switches if s <= x) % 2 == 1

    pieces = tuple(hi.pieces[i] if use_sup(lo.breakpoints[i]) else lo.pieces[i] for i in range(len(lo.pieces)))
    values = tuple(h if use_sup(t) else l for t, l, h in zip(lo.breakpoints, lo.values, hi.values))
    return PWFun(lo.breakpoints, pieces, values)

"""Plain-text entity files: parsing with line-numbered diagnostics, and serialization.

Example::

    # Jump at 0 with the value in between.
    function f
      breaks -2 0 2
      piece affine 0 -1
      piece affine 0 1
      at -2 = -1
      at 0 = 0
      at 2 = 1
    end

    map F lower=f upper=g

    map G
      breaks 0 1
      piece affine 0 0 , affine 0 1 | affine 0 2 , affine 0 3
      at 0 = [0, 1] [2, 3]
      at 1 = -1 0 1
    end

    curve c
      breaks -1 0 1
      piece 0 0 1 1          # base point, velocity
      piece 0 0 1 -1
      at -1 = -1 -1
      at 0 undefined
      at 1 = 1 -1
    end

    convex g
      breaks -1 0 1
      slopes=[-1, 1]
      anchor=1
    end

Rationals are integers or ``p/q``; decimals are rejected.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from .convex2d import AffinePath, Curve2, Point2
from .pwfun import Affine, PWFun, fmt_piece, fmt_rat, rat, reciprocal
from .subdiff import ConvexPWAffine
from .svmap import Band, IntervalValue, MultiMap, map_from_bounds

Entity = Union[PWFun, MultiMap, Curve2, ConvexPWAffine]
KINDS = ("function", "map", "curve", "convex")

_RAT = r"[+-]?\d+(?:/\d+)?"
_INTERVAL = re.compile(rf"\[\s*({_RAT})\s*,\s*({_RAT})\s*\]|({_RAT})")


class SpecError(ValueError):
    def __init__(self, problems: List[Tuple[int, str]]):
        self.problems = problems
        super().__init__("\n".join(f"line {n}: {msg}" if n else msg for n, msg in problems))


@dataclass
class SpecDoc:
    entities: Dict[str, Entity] = field(default_factory=dict)

    def get(self, name: str, *kinds) -> Entity:
        if name not in self.entities:
            raise SpecError([(0, f"unknown name {name!r}")])
        ent = self.entities[name]
        if kinds and not isinstance(ent, kinds):
            wanted = " or ".join(k.__name__ for k in kinds)
            raise SpecError([(0, f"{name!r} is a {type(ent).__name__}, expected {wanted}")])
        return ent


def _rat(tok: str, line: int) -> Fraction:
    try:
        return rat(tok)
    except (ValueError, ZeroDivisionError, TypeError):
        raise SpecError([(line, f"not an exact rational: {tok!r}")]) from None


def _piece(tokens: List[str], line: int):
    if not tokens:
        raise SpecError([(line, "missing piece expression")])
    kind, args = tokens[0], tokens[1:]
    if kind == "affine" and len(args) == 2:
        return Affine(_rat(args[0], line), _rat(args[1], line))
    if kind == "recip" and len(args) == 3:
        return reciprocal(*(_rat(a, line) for a in args))
    raise SpecError([(line, f"bad piece {' '.join(tokens)!r}; use 'affine <slope> <intercept>' or 'recip <pole> <scale> <offset>'")])


def _at_line(tokens: List[str], line: int):
    """``at <t> = <rest>`` or ``at <t> undefined`` -> (t, rest or None)."""
    if len(tokens) >= 2 and tokens[0] == "at":
        t = _rat(tokens[1], line)
        rest = tokens[2:]
        if rest == ["undefined"] or rest == ["=", "undefined"]:
            return t, None
        if rest and rest[0] == "=" and len(rest) > 1:
            return t, rest[1:]
    raise SpecError([(line, "expected 'at <t> = <value>' or 'at <t> undefined'")])


class _Block:
    def __init__(self, kind: str, name: str, line: int, header: List[str]):
        self.kind, self.name, self.line, self.header = kind, name, line, header
        self.body: List[Tuple[int, List[str], str]] = []


def _strip(raw: str) -> str:
    return raw.split("#", 1)[0].strip()


def parse_spec(text: str) -> SpecDoc:
    problems: List[Tuple[int, str]] = []
    blocks: List[_Block] = []
    current: Optional[_Block] = None
    for n, raw in enumerate(text.splitlines(), start=1):
        body = _strip(raw)
        if not body:
            continue
        tokens = body.split()
        if current is not None:
            if tokens == ["end"]:
                blocks.append(current)
                current = None
            elif tokens[0] in KINDS and len(tokens) >= 2:
                problems.append((current.line, f"{current.kind} {current.name!r} missing 'end'"))
                current = None
            else:
                current.body.append((n, tokens, body))
                continue
        if current is None and tokens != ["end"]:
            if tokens[0] not in KINDS or len(tokens) < 2:
                problems.append((n, f"expected an entity header ({', '.join(KINDS)} <name>), got {body!r}"))
                continue
            kind, name, rest = tokens[0], tokens[1], tokens[2:]
            if not re.fullmatch(r"[A-Za-z_][\w.-]*", name):
                problems.append((n, f"bad entity name {name!r}"))
                continue
            if kind == "map" and rest:
                blocks.append(_Block(kind, name, n, rest))
            else:
                if rest:
                    problems.append((n, f"unexpected text after {kind} name"))
                current = _Block(kind, name, n, [])
        elif tokens == ["end"] and current is None and not blocks:
            problems.append((n, "'end' without an entity"))
    if current is not None:
        problems.append((current.line, f"{current.kind} {current.name!r} missing 'end'"))

    doc = SpecDoc()
    deferred = []
    for blk in blocks:
        if blk.name in doc.entities or any(b.name == blk.name for b in deferred):
            problems.append((blk.line, f"duplicate name {blk.name!r}"))
            continue
        if blk.kind == "map" and blk.header:
            deferred.append(blk)
            continue
        try:
            doc.entities[blk.name] = _BUILDERS[blk.kind](blk)
        except SpecError as exc:
            problems.extend(exc.problems)
        except ValueError as exc:
            problems.append((blk.line, f"{blk.kind} {blk.name!r}: {exc}"))
    for blk in deferred:
        try:
            doc.entities[blk.name] = _bounds_map(blk, doc)
        except SpecError as exc:
            problems.extend(exc.problems)
        except ValueError as exc:
            problems.append((blk.line, f"map {blk.name!r}: {exc}"))
    if not problems and not doc.entities:
        problems.append((0, "no entities"))
    if problems:
        raise SpecError(sorted(problems))
    return doc


def _breaks(blk: _Block):
    found = [(n, toks) for n, toks, _ in blk.body if toks[0] == "breaks"]
    if len(found) != 1:
        raise SpecError([(blk.line, f"{blk.kind} {blk.name!r} needs exactly one 'breaks' line")])
    n, toks = found[0]
    bps = [_rat(t, n) for t in toks[1:]]
    for s, t in zip(bps, bps[1:]):
        if not s < t:
            raise SpecError([(n, f"breakpoints must increase strictly ({fmt_rat(s)} then {fmt_rat(t)})")])
    if len(bps) < 2:
        raise SpecError([(n, "need at least two breakpoints")])
    return bps


def _collect_at(blk: _Block, bps, convert):
    values: Dict[Fraction, object] = {}
    for n, toks, _ in blk.body:
        if toks[0] != "at":
            continue
        t, rest = _at_line(toks, n)
        if t not in bps:
            raise SpecError([(n, f"{fmt_rat(t)} is not a breakpoint")])
        if t in values:
            raise SpecError([(n, f"duplicate value for breakpoint {fmt_rat(t)}")])
        values[t] = None if rest is None else convert(rest, n)
    missing = [fmt_rat(t) for t in bps if t not in values]
    if missing:
        raise SpecError([(blk.line, f"{blk.kind} {blk.name!r}: no 'at' line for breakpoint(s) {', '.join(missing)}")])
    return [values[t] for t in bps]


def _check_lines(blk: _Block, allowed):
    for n, toks, _ in blk.body:
        if toks[0] not in allowed and not any(toks[0].startswith(a) for a in allowed if a.endswith("=")):
            raise SpecError([(n, f"unexpected line in {blk.kind}: {' '.join(toks)!r}")])


def _pieces(blk: _Block, bps, parse_one):
    lines = [(n, toks[1:], body) for n, toks, body in blk.body if toks[0] == "piece"]
    if len(lines) != len(bps) - 1:
        raise SpecError([(blk.line, f"{blk.kind} {blk.name!r}: {len(bps)} breakpoints need {len(bps) - 1} piece lines, got {len(lines)}")])
    out = []
    for (n, toks, body), u, v in zip(lines, bps, bps[1:]):
        try:
            out.append(parse_one(toks, body, n))
        except SpecError:
            raise
        except ValueError as exc:
            raise SpecError([(n, str(exc))]) from None
    return out


def _function(blk: _Block) -> PWFun:
    _check_lines(blk, ("breaks", "piece", "at"))
    bps = _breaks(blk)
    pieces = _pieces(blk, bps, lambda toks, body, n: _piece(toks, n))

    def value(rest, n):
        if len(rest) != 1:
            raise SpecError([(n, "function value must be one rational")])
        return _rat(rest[0], n)

    values = _collect_at(blk, bps, value)
    try:
        return PWFun(tuple(bps), tuple(pieces), tuple(values))
    except ValueError as exc:
        raise SpecError([(blk.line, f"function {blk.name!r}: {exc}")]) from None


def _band_list(toks, body, n):
    text = body.split(None, 1)[1] if len(body.split(None, 1)) > 1 else ""
    bands = []
    for chunk in text.split("|"):
        parts = [p.split() for p in chunk.split(",")]
        if len(parts) == 1:
            p = _piece(parts[0], n)
            bands.append(Band(p, p))
        elif len(parts) == 2:
            bands.append(Band(_piece(parts[0], n), _piece(parts[1], n)))
        else:
            raise SpecError([(n, f"band {chunk.strip()!r}: use '<lower> , <upper>' or a single curve")])
    return tuple(bands)


def _interval_union(rest, n):
    text = " ".join(rest)
    pos, out = 0, []
    for m in _INTERVAL.finditer(text):
        if text[pos:m.start()].strip():
            break
        if m.group(3) is not None:
            out.append(IntervalValue.point(_rat(m.group(3), n)))
        else:
            lo, hi = _rat(m.group(1), n), _rat(m.group(2), n)
            if lo > hi:
                raise SpecError([(n, f"empty interval [{fmt_rat(lo)}, {fmt_rat(hi)}]")])
            out.append(IntervalValue(lo, hi))
        pos = m.end()
    if text[pos:].strip() or not out:
        raise SpecError([(n, f"bad value set {text!r}; use rationals and [lo, hi] intervals")])
    return tuple(out)


def _map(blk: _Block) -> MultiMap:
    _check_lines(blk, ("breaks", "piece", "at"))
    bps = _breaks(blk)
    bands = _pieces(blk, bps, _band_list)
    values = _collect_at(blk, bps, _interval_union)
    if any(v is None for v in values):
        raise SpecError([(blk.line, f"map {blk.name!r}: map values cannot be undefined")])
    try:
        return MultiMap(tuple(bps), tuple(bands), tuple(values))
    except ValueError as exc:
        raise SpecError([(blk.line, f"map {blk.name!r}: {exc}")]) from None


def _bounds_map(blk: _Block, doc: SpecDoc) -> MultiMap:
    opts = {}
    for tok in blk.header:
        key, _, val = tok.partition("=")
        if key not in ("lower", "upper") or not val:
            raise SpecError([(blk.line, f"map {blk.name!r}: expected 'lower=<fn> upper=<fn>', got {tok!r}")])
        opts[key] = val
    if set(opts) != {"lower", "upper"}:
        raise SpecError([(blk.line, f"map {blk.name!r}: need both lower= and upper=")])
    fns = []
    for key in ("lower", "upper"):
        ent = doc.entities.get(opts[key])
        if not isinstance(ent, PWFun):
            raise SpecError([(blk.line, f"map {blk.name!r}: {key}={opts[key]} is not a defined function")])
        fns.append(ent)
    try:
        return map_from_bounds(*fns)
    except ValueError as exc:
        raise SpecError([(blk.line, f"map {blk.name!r}: {exc}")]) from None


def _curve(blk: _Block) -> Curve2:
    _check_lines(blk, ("breaks", "piece", "at"))
    bps = _breaks(blk)

    def path(toks, body, n):
        if len(toks) != 4:
            raise SpecError([(n, "curve piece needs '<qx> <qy> <vx> <vy>'")])
        qx, qy, vx, vy = (_rat(t, n) for t in toks)
        return AffinePath(Point2(qx, qy), Point2(vx, vy))

    pieces = _pieces(blk, bps, path)

    def point(rest, n):
        if len(rest) != 2:
            raise SpecError([(n, "curve value must be two rationals")])
        return Point2(_rat(rest[0], n), _rat(rest[1], n))

    values = _collect_at(blk, bps, point)
    return Curve2(tuple(bps), tuple(pieces), tuple(values))


def _convex(blk: _Block) -> ConvexPWAffine:
    _check_lines(blk, ("breaks", "slopes=", "anchor="))
    bps = _breaks(blk)
    slopes = anchor = None
    for n, toks, body in blk.body:
        if body.startswith("slopes="):
            inner = body[len("slopes="):].strip()
            if not (inner.startswith("[") and inner.endswith("]")):
                raise SpecError([(n, "slopes must be written slopes=[s1, s2, ...]")])
            slopes = [_rat(s, n) for s in inner[1:-1].split(",") if s.strip()]
        elif body.startswith("anchor="):
            anchor = _rat(body[len("anchor="):], n)
    if slopes is None or anchor is None:
        raise SpecError([(blk.line, f"convex {blk.name!r} needs slopes=[...] and anchor=<v>")])
    try:
        return ConvexPWAffine(tuple(bps), tuple(slopes), anchor)
    except ValueError as exc:
        raise SpecError([(blk.line, f"convex {blk.name!r}: {exc}")]) from None


_BUILDERS = {"function": _function, "map": _map, "curve": _curve, "convex": _convex}


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def _breaks_line(bps) -> str:
    return "  breaks " + " ".join(fmt_rat(t) for t in bps)


def serialize(name: str, ent: Entity) -> str:
    if isinstance(ent, PWFun):
        lines = [f"function {name}", _breaks_line(ent.breakpoints)]
        lines += [f"  piece {fmt_piece(p)}" for p in ent.pieces]
        lines += [f"  at {fmt_rat(t)} undefined" if v is None else f"  at {fmt_rat(t)} = {fmt_rat(v)}"
                  for t, v in zip(ent.breakpoints, ent.values)]
    elif isinstance(ent, MultiMap):
        lines = [f"map {name}", _breaks_line(ent.breakpoints)]
        for bs in ent.bands:
            lines.append("  piece " + " | ".join(str(b) for b in bs))
        for t, v in zip(ent.breakpoints, ent.values):
            lines.append(f"  at {fmt_rat(t)} = " + " ".join(str(iv) for iv in v))
    elif isinstance(ent, Curve2):
        lines = [f"curve {name}", _breaks_line(ent.breakpoints)]
        lines += [f"  piece {fmt_rat(p.base.x)} {fmt_rat(p.base.y)} {fmt_rat(p.velocity.x)} {fmt_rat(p.velocity.y)}"
                  for p in ent.pieces]
        lines += [f"  at {fmt_rat(t)} undefined" if v is None else f"  at {fmt_rat(t)} = {fmt_rat(v.x)} {fmt_rat(v.y)}"
                  for t, v in zip(ent.breakpoints, ent.values)]
    elif isinstance(ent, ConvexPWAffine):
        lines = [f"convex {name}", _breaks_line(ent.breakpoints),
                 "  slopes=[" + ", ".join(fmt_rat(s) for s in ent.slopes) + "]",
                 f"  anchor={fmt_rat(ent.anchor)}"]
    else:
        raise TypeError(f"cannot serialize {type(ent).__name__}")
    return "\n".join(lines + ["end"]) + "\n"

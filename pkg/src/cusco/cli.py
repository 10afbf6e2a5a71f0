"""Command-line front end: ``cusco <command> FILE [NAME] [options]``.

Exit codes: 0 when the verdict is true or the construction succeeded, 1 when
the verdict is false or a construction precondition fails, 2 on input errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from typing import List, Optional, Sequence

from . import oracle
from .analysis import Verdict, is_hyperplane_minimal, is_quasicontinuous, is_subcontinuous
from .convex2d import (
    Curve2,
    planar_is_hyperplane_minimal,
    planar_is_quasicontinuous,
    planar_minimal_cusco_from,
)
from .minimal import (
    INF,
    SUP,
    is_minimal_cusco,
    is_minimal_usco,
    minimal_cusco_from,
    minimal_cusco_within,
    minimal_usco_within,
    unique_minimal_usco,
)
from .pwfun import Affine, PWFun, eval_at, fmt_ext, fmt_rat, rat
from .specdoc import SpecDoc, SpecError, parse_spec, serialize
from .subdiff import ConvexPWAffine, subdifferential
from .svmap import MultiMap, PreconditionError, csc, is_cusco, is_usco

OK, FALSE, INPUT_ERROR = 0, 1, 2


class _Report:
    def __init__(self, command: str, name: Optional[str]):
        self.doc = {"command": command, "entity": name}
        self.lines: List[str] = []
        self.code = OK

    def verdict(self, label: str, v: Verdict, primary: bool = True, headline: bool = True):
        self.doc.setdefault("verdicts", {})[label] = v.as_dict()
        if headline:
            self.lines.append(f"{label}: {'true' if v.holds else 'false'}")
        if primary:
            if "verdict" not in self.doc:
                self.doc["verdict"] = v.holds
                self.doc["clause"] = v.clause
                self.doc["witnesses"] = [w.as_dict() for w in v.witnesses]
            if not v.holds:
                self.code = FALSE
        for w in v.witnesses:
            self.lines.append(f"  at {fmt_rat(w.point)} [{v.clause}]: {w.detail}")


# ---------------------------------------------------------------------------
# entity lookup
# ---------------------------------------------------------------------------


def _function(doc: SpecDoc, name: str) -> PWFun:
    ent = doc.get(name, PWFun, ConvexPWAffine)
    if isinstance(ent, ConvexPWAffine):
        vals = ent.breakpoint_values()
        pieces = tuple(Affine(s, vals[i] - s * ent.breakpoints[i]) for i, s in enumerate(ent.slopes))
        return PWFun(ent.breakpoints, pieces, vals)
    return ent


def _map(doc: SpecDoc, name: str) -> MultiMap:
    ent = doc.get(name, MultiMap, ConvexPWAffine)
    return subdifferential(ent) if isinstance(ent, ConvexPWAffine) else ent


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_check_qc(doc, args, rep):
    ent = doc.get(args.name, PWFun, ConvexPWAffine, Curve2)
    if isinstance(ent, Curve2):
        rep.verdict("quasicontinuous", planar_is_quasicontinuous(ent))
    else:
        rep.verdict("quasicontinuous", is_quasicontinuous(_function(doc, args.name)))


def cmd_check_subcont(doc, args, rep):
    rep.verdict("subcontinuous", is_subcontinuous(_function(doc, args.name)))


def cmd_check_hpmin(doc, args, rep):
    ent = doc.get(args.name, PWFun, ConvexPWAffine, Curve2)
    if isinstance(ent, Curve2):
        hp, qc = planar_is_hyperplane_minimal(ent), planar_is_quasicontinuous(ent)
    else:
        f = _function(doc, args.name)
        hp, qc = is_hyperplane_minimal(f), is_quasicontinuous(f)
    rep.lines.append(f"hyperplane minimal: {str(hp.holds).lower()}; quasicontinuous: {str(qc.holds).lower()}")
    rep.verdict("hyperplane minimal", hp, headline=False)
    rep.verdict("quasicontinuous", qc, primary=False, headline=False)


def cmd_check_usco(doc, args, rep):
    rep.verdict("usco", is_usco(_map(doc, args.name)))


def cmd_check_cusco(doc, args, rep):
    rep.verdict("cusco", is_cusco(_map(doc, args.name)))


def cmd_check_min_usco(doc, args, rep):
    rep.verdict("minimal usco", is_minimal_usco(_map(doc, args.name)))


def cmd_check_min_cusco(doc, args, rep):
    rep.verdict("minimal cusco", is_minimal_cusco(_map(doc, args.name)))


def cmd_csc(doc, args, rep):
    f = _function(doc, args.name)
    points = [rat(args.at)] if args.at is not None else list(f.breakpoints)
    out = {}
    for x in points:
        iv = csc(f, x)
        out[fmt_rat(x)] = {"lo": fmt_ext(iv.lo), "hi": fmt_ext(iv.hi), "text": str(iv)}
        rep.lines.append(str(iv) if args.at is not None else f"{fmt_rat(x)}: {iv}")
    rep.doc["csc"] = out


def _emit_entity(rep, name: str, ent):
    text = serialize(name, ent)
    rep.doc["result"] = text
    rep.lines.append(text.rstrip("\n"))


def cmd_construct_min_cusco(doc, args, rep):
    ent = doc.get(args.name, PWFun, ConvexPWAffine, Curve2)
    out_name = args.output_name or f"{args.name}_cusco"
    if isinstance(ent, Curve2):
        P = planar_minimal_cusco_from(ent)
        rows = [f"at {fmt_rat(t)} = {poly}" for t, poly in zip(P.breakpoints, P.polygons)]
        rep.doc["result"] = rows
        rep.lines.extend(rows)
        return
    _emit_entity(rep, out_name, minimal_cusco_from(_function(doc, args.name)))


def cmd_extract_min_usco(doc, args, rep):
    _emit_entity(rep, args.output_name or f"{args.name}_usco", unique_minimal_usco(_map(doc, args.name)))


def cmd_within_min_usco(doc, args, rep):
    _emit_entity(rep, args.output_name or f"{args.name}_{args.variant}",
                 minimal_usco_within(_map(doc, args.name), args.variant))


def cmd_within_min_cusco(doc, args, rep):
    _emit_entity(rep, args.output_name or f"{args.name}_{args.variant}",
                 minimal_cusco_within(_map(doc, args.name), args.variant))


def cmd_subdiff(doc, args, rep):
    g = doc.get(args.name, ConvexPWAffine)
    _emit_entity(rep, args.output_name or f"{args.name}_subdiff", subdifferential(g))


def _agree(rep, label, closed: Verdict, brute: Verdict):
    same = closed.holds == brute.holds
    rep.doc.setdefault("agreement", []).append(
        {"check": label, "closed_form": closed.holds, "oracle": brute.holds, "agree": same})
    rep.lines.append(f"{label}: closed form {str(closed.holds).lower()}, oracle {str(brute.holds).lower()}"
                     f" -> {'agree' if same else 'DISAGREE'}")
    if not same:
        rep.code = FALSE


def cmd_oracle_agree(doc, args, rep):
    names = [args.name] if args.name else sorted(doc.entities)
    depth = args.depth
    for name in names:
        ent = doc.get(name)
        if isinstance(ent, PWFun):
            _agree(rep, f"{name} quasicontinuous", is_quasicontinuous(ent), oracle.oracle_quasicontinuous(ent, depth))
            _agree(rep, f"{name} hyperplane minimal", is_hyperplane_minimal(ent),
                   oracle.oracle_hyperplane_minimal(ent, depth))
        elif isinstance(ent, Curve2):
            _agree(rep, f"{name} hyperplane minimal", planar_is_hyperplane_minimal(ent),
                   oracle.oracle_planar_hyperplane_minimal(ent, depth))
        else:
            F = _map(doc, name)
            usc = is_usco(F)
            _agree(rep, f"{name} usco", usc, oracle.oracle_usc(F, depth))
            if usc:
                _agree(rep, f"{name} minimal usco", is_minimal_usco(F), oracle.submap_search(F))


def _grid(a: Fraction, b: Fraction, step: Fraction):
    x = a
    while x <= b:
        yield x
        x += step


def cmd_sample(doc, args, rep):
    step = rat(args.step)
    if step <= 0:
        raise SpecError([(0, "--step must be positive")])
    ent = doc.get(args.name)
    rows: List[List[str]] = []
    if isinstance(ent, PWFun):
        header = ["x", "y"]
        for x in _grid(*ent.domain, step):
            rows.append([fmt_rat(x), fmt_ext(eval_at(ent, x))])
    elif isinstance(ent, Curve2):
        header = ["x", "px", "py"]
        for x in _grid(*ent.domain, step):
            p = ent(x)
            rows.append([fmt_rat(x), "none", "none"] if p is None else [fmt_rat(x), fmt_rat(p.x), fmt_rat(p.y)])
    else:
        F = _map(doc, args.name)
        header = ["x", "lo", "hi"]
        for x in _grid(*F.domain, step):
            for iv in F.value_at(x):
                rows.append([fmt_rat(x), fmt_rat(iv.lo), fmt_rat(iv.hi)])
    rep.doc["header"] = header
    rep.doc["rows"] = rows
    rep.csv = ([header] if args.header else []) + rows


_COMMANDS = {
    "check-qc": (cmd_check_qc, "quasicontinuity of a function or planar curve"),
    "check-subcont": (cmd_check_subcont, "subcontinuity of a function"),
    "check-hpmin": (cmd_check_hpmin, "hyperplane minimality (also reports quasicontinuity)"),
    "check-usco": (cmd_check_usco, "usco check for a map"),
    "check-cusco": (cmd_check_cusco, "cusco check for a map"),
    "check-min-usco": (cmd_check_min_usco, "minimal usco check"),
    "check-min-cusco": (cmd_check_min_cusco, "minimal cusco check"),
    "csc": (cmd_csc, "CSC operator of a function at breakpoints or at --at"),
    "construct-min-cusco": (cmd_construct_min_cusco, "minimal cusco generated by a function"),
    "extract-min-usco": (cmd_extract_min_usco, "the minimal usco inside a minimal cusco"),
    "within-min-usco": (cmd_within_min_usco, "a minimal usco inside a usco"),
    "within-min-cusco": (cmd_within_min_cusco, "a minimal cusco inside a cusco"),
    "subdiff": (cmd_subdiff, "subdifferential of a convex piecewise-affine function"),
    "oracle-agree": (cmd_oracle_agree, "compare closed-form verdicts with brute-force oracles"),
    "sample": (cmd_sample, "CSV samples on a rational grid"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cusco", description="Exact checks and constructions for minimal usco/cusco maps.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name, (_, help_text) in _COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file", help="entity file ('-' for stdin)")
        p.add_argument("name", nargs="?" if name == "oracle-agree" else None, help="entity name")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        if name == "csc":
            p.add_argument("--at", help="evaluate at one rational point")
        if name in ("construct-min-cusco", "extract-min-usco", "within-min-usco", "within-min-cusco", "subdiff"):
            p.add_argument("--as", dest="output_name", help="name of the emitted entity")
        if name in ("within-min-usco", "within-min-cusco"):
            p.add_argument("--variant", choices=[INF, SUP], default=INF)
        if name == "oracle-agree":
            p.add_argument("--depth", type=int, default=oracle.DEFAULT_DEPTH)
        if name == "sample":
            p.add_argument("--step", required=True, help="grid step p/q")
            p.add_argument("--header", action="store_true", help="emit a CSV header row")
    return parser


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INPUT_ERROR if exc.code else OK
    rep = _Report(args.command, getattr(args, "name", None))
    rep.csv = None
    try:
        doc = parse_spec(_read(args.file))
        _COMMANDS[args.command][0](doc, args, rep)
    except OSError as exc:
        print(f"cusco: {exc}", file=sys.stderr)
        return INPUT_ERROR
    except SpecError as exc:
        for n, msg in exc.problems:
            print(f"{args.file}:{n}: {msg}" if n else f"{args.file}: {msg}", file=sys.stderr)
        return INPUT_ERROR
    except PreconditionError as exc:
        rep.doc["verdict"] = False
        rep.doc["error"] = str(exc)
        if exc.verdict is not None:
            rep.doc["clause"] = exc.verdict.clause
            rep.doc["witnesses"] = [w.as_dict() for w in exc.verdict.witnesses]
        print(f"cusco: precondition failed: {exc}", file=sys.stderr)
        if args.json:
            print(json.dumps(rep.doc, indent=2))
        return FALSE
    except ValueError as exc:
        print(f"cusco: {exc}", file=sys.stderr)
        return INPUT_ERROR

    if args.json:
        print(json.dumps(rep.doc, indent=2))
    elif rep.csv is not None:
        csv.writer(sys.stdout, lineterminator="\n").writerows(rep.csv)
    else:
        for line in rep.lines:
            print(line)
    return rep.code


if __name__ == "__main__":
    sys.exit(main())

"""Command line entry points.

Exit codes: 0 success, 1 a corpus expectation did not match, 2 bad input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction

import numpy as np

from . import __version__
from . import corpus as corp
from . import curvmodel as cm
from . import geometry as geo
from . import propcheck as pc
from .exactla import signature, spectral_profile
from .formats import InputFormatError, load_input

SCHEMA = "curvops.report/1"
EXIT_OK, EXIT_MISMATCH, EXIT_INPUT = 0, 1, 2

MODEL_PROPS = (*pc.COMMUTING_KINDS, "jacobi_square_zero", "three_skew_nilpotent",
               "curvature_image_isotropy", "pseudo_einstein", "einstein", "ricci_zero",
               "osserman", "conformal_osserman")
CHART_PROPS = ("locally_symmetric", "self_dual", "anti_self_dual")


class InputError(Exception):
    pass


def _vector(text: str, what: str) -> tuple:
    try:
        return tuple(Fraction(t) for t in text.replace(" ", "").split(","))
    except (ValueError, ZeroDivisionError):
        raise InputError(f"{what} must be comma-separated rationals, got {text!r}") from None


def _report_for(mdl: cm.Model, prop: str) -> dict:
    if prop in pc.COMMUTING_KINDS:
        r = pc.check_commuting(mdl, prop)
    elif prop == "jacobi_square_zero":
        r = pc.jacobi_square_zero(mdl)
    elif prop == "three_skew_nilpotent":
        r = pc.three_skew_nilpotent(mdl)
    elif prop == "curvature_image_isotropy":
        r = pc.curvature_image_isotropy(mdl)
    elif prop == "pseudo_einstein":
        r = pc.pseudo_einstein(mdl)
    elif prop in ("osserman", "conformal_osserman"):
        o = pc.osserman_report(mdl, "jacobi" if prop == "osserman" else "conformal")
        return {"holds": o.is_osserman, "details": o.as_dict()}
    else:
        return {"holds": corp.model_verdict(mdl, prop)}
    d = r.as_dict()
    return {"holds": d["holds"], "witness": d.get("witness"), "notes": d.get("notes", "")}


def analyze(obj, point=None, props=None) -> dict:
    t0 = time.perf_counter()
    out: dict = {"schema": SCHEMA, "version": __version__}
    verdicts: dict = {}
    if isinstance(obj, geo.Chart):
        out["input"] = {"kind": "chart", "name": obj.name, "coords": obj.names}
        wanted = list(props) if props else None
        for p in CHART_PROPS:
            if wanted is not None and p not in wanted:
                continue
            if p == "locally_symmetric":
                verdicts[p] = {"holds": geo.is_locally_symmetric(obj)}
            elif obj.dim == 4:
                rep = geo.sd_asd_report(obj, point)
                verdicts[p] = {"holds": rep[p], "scope": "symbolic" if point is None else "point"}
        if point is not None:
            if len(point) != obj.dim:
                raise InputError(f"point has {len(point)} coordinates, chart has {obj.dim}")
            out["point"] = [str(v) for v in point]
            mdl = geo.model_at(obj, point)
        else:
            mdl = None
            out["tau"] = geo.scalar_curvature(obj).render()
    else:
        out["input"] = {"kind": "model", "dim": obj.dim}
        mdl = obj
    if mdl is not None:
        out["signature"] = list(signature(mdl.G))
        for p in MODEL_PROPS:
            if props and p not in props:
                continue
            if p == "conformal_osserman" and mdl.dim < 3:
                continue
            verdicts[p] = _report_for(mdl, p)
        out["ricci_spectrum"] = spectral_profile(cm.ricci(mdl)).as_dict()
    if props:
        unknown = set(props) - set(MODEL_PROPS) - set(CHART_PROPS)
        if unknown:
            raise InputError(f"unknown properties: {', '.join(sorted(unknown))}")
    out["verdicts"] = verdicts
    out["timing_seconds"] = round(time.perf_counter() - t0, 3)
    return out


def _md_report(rep: dict) -> str:
    lines = [f"# analysis ({rep['input']['kind']})", ""]
    if "point" in rep:
        lines.append(f"point: ({', '.join(rep['point'])})")
    if "signature" in rep:
        lines.append(f"signature: ({rep['signature'][0]}, {rep['signature'][1]})")
    if "tau" in rep:
        lines.append(f"scalar curvature: {rep['tau']}")
    lines += ["", "| property | holds | witness |", "|---|---|---|"]
    for k, v in rep["verdicts"].items():
        w = v.get("witness")
        lines.append(f"| {k} | {'yes' if v['holds'] else 'no'} | {json.dumps(w) if w else ''} |")
    if "ricci_spectrum" in rep:
        lines += ["", f"Ricci characteristic polynomial: {rep['ricci_spectrum']['char_poly_factored']}"]
    return "\n".join(lines) + "\n"


def _md_corpus(summary: dict) -> str:
    lines = ["| entry | result | checks |", "|---|---|---|"]
    for e in summary["entries"]:
        ok = sum(c["ok"] for c in e["checks"])
        lines.append(f"| {e['id']} | {'pass' if e['passed'] else 'FAIL'} | {ok}/{len(e['checks'])} |")
        for c in e["checks"]:
            if not c["ok"]:
                lines.append(f"|  | {c['op']} {c['args']} | expected {c['expected']}, got {c['got']} |")
    return "\n".join(lines) + "\n"


def _file_hash(path: str) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def _load(path: str):
    try:
        return load_input(path)
    except InputFormatError as exc:
        raise InputError(str(exc)) from None


def cmd_analyze(args) -> int:
    obj = _load(args.file)
    point = _vector(args.point, "--point") if args.point else None
    props = [p.strip() for p in args.props.split(",")] if args.props else None
    if point is None and isinstance(obj, geo.Chart) and props and set(props) - set(CHART_PROPS):
        raise InputError("pointwise properties of a chart need --point")
    rep = analyze(obj, point, props)
    rep["input"]["sha256"] = _file_hash(args.file)
    rep["input"]["path"] = args.file
    sys.stdout.write(json.dumps(rep, indent=2) + "\n" if args.format == "json" else _md_report(rep))
    return EXIT_OK


def cmd_corpus(args) -> int:
    if args.action == "list":
        for e in corp.corpus():
            print(f"{e.id}\t{len(e.expectations)}\t{e.description}")
        return EXIT_OK
    params = {}
    for item in args.param or []:
        key, sep, val = item.partition("=")
        if not sep:
            raise InputError(f"--param expects name=value, got {item!r}")
        params[key.strip()] = _vector(val, f"--param {key.strip()}")[0]
    try:
        summary = corp.run_corpus(args.filter, jobs=args.jobs, params=params or None)
    except KeyError as exc:
        raise InputError(str(exc.args[0])) from None
    if args.no_timing:
        for e in summary["entries"]:
            e.pop("seconds", None)
    doc = {"schema": SCHEMA, "version": __version__, **summary}
    if args.format == "json":
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        sys.stdout.write(_md_corpus(summary))
        print(f"{summary['total_entries']} entries, {summary['total_checks']} checks, "
              f"{summary['failed_checks']} failed")
    return EXIT_OK if summary["passed"] else EXIT_MISMATCH


def cmd_spectrum(args) -> int:
    obj = _load(args.file)
    if not isinstance(obj, geo.Chart):
        if args.point:
            raise InputError("--point applies to charts only")
        mdl = obj
    else:
        if not args.point:
            raise InputError("charts need --point")
        pt = _vector(args.point, "--point")
        if len(pt) != obj.dim:
            raise InputError(f"point has {len(pt)} coordinates, chart has {obj.dim}")
        mdl = geo.model_at(obj, pt)
    if args.operator == "ricci":
        M = cm.ricci(mdl)
    else:
        if not args.direction:
            raise InputError(f"operator {args.operator} needs --direction")
        x = np.array(_vector(args.direction, "--direction"), dtype=object)
        if len(x) != mdl.dim:
            raise InputError(f"direction has {len(x)} entries, dimension is {mdl.dim}")
        M = cm.jacobi(mdl, x) if args.operator == "jacobi" else cm.conformal_jacobi(mdl, x)
    prof = spectral_profile(M)
    if args.format == "json":
        print(json.dumps({"schema": SCHEMA, "version": __version__, "operator": args.operator,
                          **prof.as_dict()}, indent=2))
    else:
        print(prof.render())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="curvops", description="Exact curvature-operator checks.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="property verdicts for a model or chart file")
    a.add_argument("file")
    a.add_argument("--point", help="comma-separated rational coordinates")
    a.add_argument("--props", help="comma-separated subset of properties")
    a.add_argument("--format", choices=("json", "md"), default="json")
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("corpus", help="run or list the built-in corpus")
    c.add_argument("action", choices=("run", "list"))
    c.add_argument("--filter", help="entry id prefix")
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--format", choices=("json", "md"), default="md")
    c.add_argument("--param", action="append", metavar="NAME=VALUE",
                   help="set a parameter of parametric entries (EX5 a11, a22, ...); repeatable")
    c.add_argument("--no-timing", action="store_true", help="drop timing fields for byte-stable output")
    c.set_defaults(func=cmd_corpus)

    s = sub.add_parser("spectrum", help="characteristic/minimal polynomial of an operator")
    s.add_argument("file")
    s.add_argument("--operator", choices=("jw", "jacobi", "ricci"), required=True)
    s.add_argument("--direction", help="comma-separated rational vector")
    s.add_argument("--point", help="comma-separated rational coordinates (charts)")
    s.add_argument("--format", choices=("text", "json"), default="text")
    s.set_defaults(func=cmd_spectrum)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:  # argparse uses 2 for usage errors already
        return int(exc.code or 0)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (geo.InexactValueError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

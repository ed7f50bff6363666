"""Command-line interface: ``extforge resolve|chart|certify|verify-identity|les``.

Exit codes: 0 ok, 2 bad input (unknown name, unreadable file), 3 range or
truncation exceeded, 4 certificate not obtained.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import re
import sys

from . import __version__
from .charclass import identity_names, verify_paper_identity
from .errors import (ExtforgeError, RangeExceeded, TruncationExceeded, UnknownAction,
                     UnknownAlgebra, UnknownIdentity, UnknownModule)
from .extcalc import ExtChart, FPModule, builtin_module, compute_chart, shapiro_chart, trivial_module
from .render import chart_to_ascii, chart_to_svg
from .ssengine import check_exact, deduce
from .steenrod import builtin_algebra

EXIT_OK, EXIT_INPUT, EXIT_RANGE, EXIT_CERT = 0, 2, 3, 4
DOC_KIND = "extforge.chart"


def _digest(obj) -> str:
    blob = json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


def chart_document(chart: ExtChart, algebra, module: FPModule, max_s: int, max_t: int) -> dict:
    return {
        "kind": DOC_KIND,
        "metadata": {"prime": chart.prime, "algebra": algebra.name, "module": module.name,
                     "max_s": max_s, "max_t": max_t},
        "body": chart.to_dict(),
        "provenance": {"tool": "extforge", "version": __version__,
                       "inputs": {"algebra": _digest(algebra.pres.to_dict()),
                                  "module": _digest(module.to_dict())}},
    }


def dump_document(doc: dict) -> str:
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def read_document(path: str) -> ExtChart:
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    if doc.get("kind") != DOC_KIND or "body" not in doc:
        raise ValueError(f"{path} is not a chart document")
    return ExtChart.from_dict(doc["body"])


def _write(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def load_module(name: str, algebra_name: str) -> FPModule:
    if name.endswith(".json") and os.path.exists(name):
        with open(name, encoding="utf-8") as fh:
            return FPModule.from_dict(json.load(fh))
    if re.fullmatch(r"F(p|\d+)", name):
        return builtin_module(name, algebra_name)
    M = builtin_module(name)
    if M.algebra.name != builtin_algebra(algebra_name).name:
        raise UnknownModule(f"module {name} lives over {M.algebra.name}, not {algebra_name}")
    return M


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_resolve(args) -> int:
    A = builtin_algebra(args.algebra)
    M = load_module(args.module, args.algebra)
    ops = [o for o in args.ops.split(",") if o] if args.ops else ["h0"]
    shapiro_ops = [o for o in ops if o in ("y1", "y2") and A.name == "Atmf3"]
    direct_ops = tuple(o for o in ops if o not in shapiro_ops)
    chart = compute_chart(M, args.max_s, args.max_t, ops=direct_ops)
    if shapiro_ops:
        if M.name != "N3":
            raise UnknownAction("y1, y2 are transported only for N3 = A^tmf (x)_B F3")
        B = builtin_algebra("ExteriorB")
        over_b = compute_chart(trivial_module(B), args.max_s, args.max_t, ops=tuple(shapiro_ops))
        chart = shapiro_chart(chart, over_b, tuple(shapiro_ops))
    _write(dump_document(chart_document(chart, A, M, args.max_s, args.max_t)), args.out)
    return EXIT_OK


def cmd_chart(args) -> int:
    try:
        chart = read_document(args.file)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        print(f"error: cannot read chart: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.format == "svg":
        text = chart_to_svg(chart, title=args.title)
    else:
        text = chart_to_ascii(chart, max_stem=args.max_stem)
    _write(text, args.out)
    return EXIT_OK


def cmd_certify(args) -> int:
    from .pipelines import TARGETS
    if args.target not in TARGETS:
        print(f"error: unknown target {args.target!r}; known: {', '.join(TARGETS)}", file=sys.stderr)
        return EXIT_INPUT
    fn = TARGETS[args.target]
    if args.target == "ex-even":
        report = fn(args.group or "SU3")
    else:
        report = fn()
    print(f"{report['target']}: {report['verdict']}")
    if args.json or not report["ok"]:
        print(json.dumps(report, indent=1, sort_keys=True, default=str))
    return EXIT_OK if report["ok"] else EXIT_CERT


def cmd_verify_identity(args) -> int:
    params = {}
    if args.name == "CPCP_LAMBDAC":
        params = {"m": args.m, "n": args.n, "k": args.k}
    elif args.trivial:
        params = {"LAMBDA_C_WHITNEY": {"trivial_w": True}, "P1_TENSOR": {"trivial_l2": True}}.get(args.name, {})
    if args.two_torsion_detected and args.name == "W7_DERIVATION":
        params["two_torsion_detected"] = True
    report = verify_paper_identity(args.name, **params)
    print(report.to_text())
    if report.data:
        print(json.dumps(report.data, indent=1, sort_keys=True))
    if args.strict and not report.holds:
        return EXIT_CERT
    return EXIT_OK


def cmd_les(args) -> int:
    from .pipelines import load_les
    t = load_les(args.dataset)
    check_exact(t)
    if not args.no_deduce:
        t = deduce(t)
        check_exact(t)
    print(t)
    for i, why in sorted(t.provenance.items()):
        print(f"deduced {t.label(i)} = {t.entries[i]}  ({why})")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="extforge", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"extforge {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    r = sub.add_parser("resolve", help="minimal resolution -> chart document")
    r.add_argument("--algebra", required=True, help="E1_2, E1(3), A1, A2, Atmf3, ExteriorB, ...")
    r.add_argument("--module", required=True, help="N3, HBP3, Qbar(p), Fp, BG2, ... or a module JSON file")
    r.add_argument("--max-s", type=int, default=12)
    r.add_argument("--max-t", type=int, default=32)
    r.add_argument("--ops", default="h0", help="comma separated operations (h0,v1,y1,y2,...)")
    r.add_argument("--out")
    r.set_defaults(func=cmd_resolve)

    c = sub.add_parser("chart", help="render a chart document")
    c.add_argument("file")
    c.add_argument("--format", choices=("svg", "ascii"), default="svg")
    c.add_argument("--out")
    c.add_argument("--title")
    c.add_argument("--max-stem", type=int)
    c.set_defaults(func=cmd_chart)

    k = sub.add_parser("certify", help="run a reproduction pipeline and issue a certificate")
    k.add_argument("--target", required=True)
    k.add_argument("group", nargs="?", help="group for ex-even, e.g. SU3, U2, Sp2")
    k.add_argument("--json", action="store_true", help="always print the machine-readable report")
    k.set_defaults(func=cmd_certify)

    v = sub.add_parser("verify-identity", help="characteristic-class identity derivations")
    v.add_argument("--name", required=True, help=", ".join(identity_names()))
    v.add_argument("--m", type=int, default=3)
    v.add_argument("--n", type=int, default=3)
    v.add_argument("--k", type=int, default=0)
    v.add_argument("--trivial", action="store_true", help="use a trivial second bundle")
    v.add_argument("--two-torsion-detected", action="store_true",
                   help="assume reduction mod 2 detects integral torsion (W7 beta step)")
    v.add_argument("--strict", action="store_true", help="exit 4 if the identity does not hold")
    v.set_defaults(func=cmd_verify_identity)

    e = sub.add_parser("les", help="check and deduce a long exact sequence dataset")
    e.add_argument("--dataset", required=True, help="FIG_BSTRINGH or FIG_F")
    e.add_argument("--no-deduce", action="store_true")
    e.set_defaults(func=cmd_les)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (TruncationExceeded, RangeExceeded) as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return EXIT_RANGE
    except (UnknownAlgebra, UnknownModule, UnknownIdentity, UnknownAction) as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ExtforgeError as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return EXIT_CERT if exc.code in ("INCONSISTENT", "SPLIT_VIOLATION") else EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

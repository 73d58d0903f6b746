"""Command-line front end.

Exit codes: 0 success, 1 a theorem check failed, 2 invalid input.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import io
from .cohomology import Cocycle, h1, h1_group_structure, make_cocycle, trivial_cocycle
from .errors import FincohError
from .forms import classify_forms
from .groups import make_subgroup
from .suites import SUITES, run_suites
from .torsors import classify_torsors
from .twisting import fiber_analysis, twist_action

SCHEMA_VERSION = "1"


def _instance_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--group", help="target group: file or catalog name")
    p.add_argument("--acting", help="acting group: file or catalog name")
    p.add_argument("--action", help="action file; omitted means the trivial action")


def _load(args):
    target = io.load_group(args.group) if args.group else None
    acting = io.load_group(args.acting) if args.acting else None
    return io.load_action(args.action, acting, target)


def _emit(report: dict, output: Optional[str]) -> None:
    text = io.dumps(dict(report, schema_version=SCHEMA_VERSION))
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_h1(args) -> int:
    action = _load(args)
    H = h1(action)
    report = H.to_json()
    if action.target.is_abelian:
        report["group_table"] = [list(r) for r in h1_group_structure(H).table]
    _emit(report, args.output)
    return 0


def cmd_forms(args) -> int:
    fc = classify_forms(_load(args))
    _emit(fc.to_json(), args.output)
    return 0 if fc.matching_ok else 1


def _parse_cocycle(action, text: str) -> Cocycle:
    if text == "trivial":
        return trivial_cocycle(action)
    if Path(text).exists():
        values = json.loads(Path(text).read_text())
    else:
        try:
            values = json.loads(text)
        except json.JSONDecodeError:
            raise io.InputError(f"--cocycle must be 'trivial', a JSON list or a file: {text!r}") from None
    if isinstance(values, dict):
        values = values.get("values")
    if not isinstance(values, list):
        raise io.InputError("cocycle must be a list of target elements, one per acting element")
    return make_cocycle(action, values)


def cmd_twist(args) -> int:
    action = _load(args)
    phi = _parse_cocycle(action, args.cocycle)
    tw = twist_action(action, phi)
    G = action.target
    N = io.load_subgroup(G, args.subgroup) if args.subgroup else make_subgroup(G, list(G.elements))
    H = h1(action)
    report = {"cocycle": list(phi.values), "class": H.classify(phi.values),
              "twisted_images": {str(s): list(p) for s, p in enumerate(tw.images)},
              "subgroup": list(N.members)}
    ok = True
    if N.normal:
        fr = fiber_analysis(action, N)
        report["fibers"] = fr.to_json()
        report["selected"] = fr.entries[report["class"]].to_json()
        ok = fr.ok
    else:
        report["fibers"] = None
    _emit(report, args.output)
    return 0 if ok else 1


def cmd_torsors(args) -> int:
    census = classify_torsors(_load(args), args.bound)
    _emit(census.to_json(), args.output)
    return 0 if census.match else 1


def cmd_verify(args) -> int:
    if args.count < 0 or args.max_g < 1 or args.max_gg < 1:
        raise io.InputError("bounds must be positive")
    rep = run_suites([args.suite], args.seed, args.count, args.max_g, args.max_gg)
    report = rep.to_json()
    if not args.full:
        report["results"] = [r for r in report["results"]
                             if not r["pass"] or r["suite"] == "cardinality"]
    _emit(report, args.output)
    for s, v in report["summary"].items():
        print(f"{s}: {v['checks'] - v['failures']}/{v['checks']} passed", file=sys.stderr)
    return 0 if rep.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fincoh",
                                     description="Nonabelian H¹ of finite group actions.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("h1", help="compute the first cohomology pointed set")
    _instance_args(p)
    p.add_argument("--output")
    p.set_defaults(func=cmd_h1)

    p = sub.add_parser("verify", help="run property suites over seeded instances")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--max-g", type=int, default=10, help="largest target group order")
    p.add_argument("--max-gg", type=int, default=6, help="largest acting group order")
    p.add_argument("--full", action="store_true", help="include passing checks in the report")
    p.add_argument("--output")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("forms", help="classify forms via H¹ with coefficients in Aut(G)")
    _instance_args(p)
    p.add_argument("--output")
    p.set_defaults(func=cmd_forms)

    p = sub.add_parser("twist", help="twist by a cocycle and analyse the fibres of π¹")
    _instance_args(p)
    p.add_argument("--cocycle", default="trivial",
                   help="'trivial', a JSON list of values, or a file")
    p.add_argument("--subgroup", help="normal invariant subgroup file; defaults to G")
    p.add_argument("--output")
    p.set_defaults(func=cmd_twist)

    p = sub.add_parser("torsors", help="census of torsors against H¹")
    _instance_args(p)
    p.add_argument("--bound", type=int, default=None)
    p.add_argument("--output")
    p.set_defaults(func=cmd_torsors)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (FincohError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {type(exc).__name__}: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

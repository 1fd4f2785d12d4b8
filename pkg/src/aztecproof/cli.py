"""Command line front end: ``aztecproof {build,count,formula,verify,render}``.

Exit status is 0 when everything checked out, 1 when a verification failed
and 2 for bad usage or bad parameters.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import formulas, replay
from .formulas import FormulaError
from .graph import EmbeddedPlanarGraph, GraphError
from .matching import TooLarge, count_matchings, count_matchings_bruteforce
from .regions import Infeasible, RegionSpec
from .svg import render_svg

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _int_list(text, count=None):
    try:
        vals = tuple(int(t) for t in text.split(","))
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None
    if count is not None and len(vals) != count:
        raise UsageError(f"expected {count} integers, got {len(vals)}")
    return vals


def _params(text):
    out = {}
    for item in filter(None, (text or "").split(",")):
        k, eq, v = item.partition("=")
        if not eq:
            raise UsageError(f"bad parameter {item!r}; use key=value")
        k = k.strip()
        try:
            out[k] = tuple(int(t) for t in v.split(";") if t) if k == "T" else int(v)
        except ValueError:
            raise UsageError(f"bad value in {item!r}") from None
    return out


def _load_graph(args) -> EmbeddedPlanarGraph:
    if args.region:
        return RegionSpec.parse(args.region).build()
    if args.graph_json:
        return EmbeddedPlanarGraph.from_json(Path(args.graph_json).read_text())
    raise UsageError("give --region or --graph-json")


def _emit(text, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_build(args):
    _emit(_load_graph(args).to_json() + "\n", args.out)
    return EXIT_OK


def cmd_count(args):
    g = _load_graph(args)
    value = count_matchings_bruteforce(g) if args.brute else count_matchings(g)
    print(value)
    return EXIT_OK


FORMULA_KEYS = {
    "T": ("n",),
    "C": ("m", "n", "a", "b", "c", "d"),
    "D": ("m", "n", "a", "b", "d"),
    "trimmed-ar": ("m", "n", "T"),
    "ratio": ("n",),
}


def cmd_formula(args):
    p = _params(args.params)
    keys = FORMULA_KEYS[args.name]
    missing = [k for k in keys if k not in p]
    extra = [k for k in p if k not in keys]
    if missing or extra:
        raise UsageError(f"formula {args.name} takes {','.join(keys)}")
    vals = [p[k] for k in keys]
    if args.name == "T":
        print(formulas.formula_T(*vals))
    elif args.name == "C":
        print(formulas.formula_C(*vals))
    elif args.name == "D":
        print(formulas.formula_D(*vals))
    elif args.name == "trimmed-ar":
        print(formulas.formula_trimmed_AR(*vals))
    else:
        print(" = ".join(str(Fraction(v)) for v in formulas.ratio_identity(*vals)))
    return EXIT_OK


def cmd_verify(args):
    picked = sum(bool(x) for x in (args.chain, args.complementation, args.sweep))
    if picked != 1:
        raise UsageError("choose exactly one of --chain, --complementation, --sweep")
    if args.chain:
        if args.n_max < 1:
            raise UsageError("--n-max must be at least 1")
        reports = replay.verify_chain(args.n_max)
    elif args.complementation:
        reports = replay.verify_complementation(*_int_list(args.complementation, 5))
    else:
        sweeps = {
            "tba": replay.sweep_cruciform,
            "tbb": replay.sweep_nearly_cruciform,
            "tca": replay.sweep_trimmed,
            "complementation": replay.sweep_complementation,
        }
        fn = sweeps[args.sweep]
        reports = fn(args.max) if args.max is not None else fn()
    text = replay.to_jsonl(reports, timings=args.timings)
    if args.report:
        Path(args.report).write_text(text)
    bad = [r for r in reports if not r.passed]
    skipped = sum(1 for r in reports if r.skipped)
    for r in bad:
        print(f"FAIL {r.identity_id} {r.to_dict()['n']}: {r.note}", file=sys.stderr)
    print(f"{len(reports) - len(bad)}/{len(reports)} passed ({skipped} skipped)")
    return EXIT_OK if not bad else EXIT_FAIL


def cmd_render(args):
    _emit(render_svg(_load_graph(args), scale=args.scale), args.out)
    return EXIT_OK


def build_parser():
    ap = argparse.ArgumentParser(prog="aztecproof", description="Exact matching counts and proof replay.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def graph_source(p):
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--region", help='e.g. "aztec-triangle:n=5" or "cruciform:m=3,n=2,a=1,b=1,c=1,d=1"')
        src.add_argument("--graph-json", help="graph file in the JSON exchange format")

    p = sub.add_parser("build", help="print a region's graph as JSON")
    graph_source(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("count", help="count perfect matchings exactly")
    graph_source(p)
    p.add_argument("--brute", action="store_true", help="use the enumeration oracle instead")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("formula", help="evaluate a closed-form product")
    p.add_argument("--name", required=True, choices=sorted(FORMULA_KEYS))
    p.add_argument("--params", default="", help='e.g. "m=3,n=3,a=1,b=1,d=1"; T as "T=1;3"')
    p.set_defaults(func=cmd_formula)

    p = sub.add_parser("verify", help="replay identities and write a JSON-lines report")
    p.add_argument("--chain", action="store_true")
    p.add_argument("--n-max", type=int, default=4)
    p.add_argument("--complementation", metavar="m,n,a,b,d")
    p.add_argument("--sweep", choices=("tba", "tbb", "tca", "complementation"))
    p.add_argument("--max", type=int, default=None, help="size bound for --sweep")
    p.add_argument("--report")
    p.add_argument("--timings", action="store_true", help="add elapsed_ms to each record")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("render", help="draw a graph as SVG")
    graph_source(p)
    p.add_argument("--out")
    p.add_argument("--scale", type=int, default=20)
    p.set_defaults(func=cmd_render)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, FormulaError, GraphError, Infeasible, TooLarge, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def cli(argv=None) -> int:
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())

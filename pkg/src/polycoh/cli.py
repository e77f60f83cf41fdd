"""Command line driver: each verification is independently invokable.

    polycoh suite                         # default heptagon suite
    polycoh verify-relation --n 2,3,4,5 --field Q --seeds 0..19
    polycoh ranks --n 5
    polycoh cocycle5 --seed 1 --format markdown
    polycoh bockstein --prime 5 --k 1 --l 2 --trials 50

Exit status is 0 exactly when every executed check holds.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .report import CHECK_NAMES, SuiteConfig, emit_report, run_suite


def _parse_ints(text: str) -> tuple:
    """Parse "1,2,5" or "0..19" (inclusive range) into a tuple of ints."""
    if ".." in text:
        lo, hi = text.split("..")
        return tuple(range(int(lo), int(hi) + 1))
    return tuple(int(x) for x in text.split(","))


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--n", default="3", help="polygon ranks, e.g. 2,3,4,5")
    parser.add_argument("--field", default="Q",
                        help='comma list of fields: Q or Fq:<q>')
    parser.add_argument("--seeds", default="0,1,2,3,4",
                        help="seeds, e.g. 0,1,2 or 0..19")
    parser.add_argument("--bound", type=int, default=10,
                        help="entry bound for rational sampling")
    parser.add_argument("--trials", type=int, default=50,
                        help="trial count for the characteristic-p lift")
    parser.add_argument("--params", type=Path, default=None,
                        help="JSON file with an explicit parameter matrix")
    parser.add_argument("--out", type=Path, default=None,
                        help="write the report here instead of stdout")
    parser.add_argument("--format", choices=("json", "markdown"),
                        default="json")
    parser.add_argument("--jobs", type=int, default=1,
                        help="worker processes for independent trials")
    parser.add_argument("--timings", action="store_true",
                        help="include timings in the JSON report")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polycoh",
        description="exact verification of odd polygon relations and their "
                    "quadratic cochain complexes")
    sub = parser.add_subparsers(dest="command", required=True)

    specs = {
        "verify-relation": ("relation",),
        "ranks": ("ranks",),
        "cocycle4": ("cocycle4",),
        "cocycle5": ("cocycle5",),
        "dethad": ("dethad",),
        "bockstein": ("bockstein",),
        "suite": CHECK_NAMES,
    }
    for name, checks in specs.items():
        p = sub.add_parser(name)
        _add_common(p)
        p.set_defaults(checks=checks)
        if name in ("verify-relation", "suite"):
            p.add_argument("--tamper", action="store_true",
                           help="debug: perturb one transition entry so the "
                                "relation fails (negative control)")
        if name in ("bockstein", "suite"):
            p.add_argument("--prime", type=int, default=3)
            p.add_argument("--k", type=int, default=1)
            p.add_argument("--l", type=int, default=1)
    return parser


def config_from_args(args: argparse.Namespace) -> SuiteConfig:
    params_json = None
    if args.params is not None:
        params_json = args.params.read_text()
    return SuiteConfig(
        ns=_parse_ints(args.n),
        field_names=tuple(args.field.split(",")),
        seeds=_parse_ints(args.seeds),
        bound=args.bound,
        trials=args.trials,
        checks=tuple(args.checks),
        bockstein_prime=getattr(args, "prime", 3),
        bockstein_k=getattr(args, "k", 1),
        bockstein_l=getattr(args, "l", 1),
        tamper=getattr(args, "tamper", False),
        params_json=params_json,
        jobs=args.jobs,
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = config_from_args(args)
    report = run_suite(cfg)
    text = emit_report(report, fmt=args.format,
                       include_timings=getattr(args, "timings", False))
    if args.out is not None:
        args.out.write_text(text)
    else:
        print(text)
    return 0 if report.all_pass else 1


if __name__ == "__main__":
    sys.exit(main())

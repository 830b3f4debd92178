"""Command-line entry point.

    spectrum-eq solve <config.json> [--runs R] [--game.w 10 --solver.seed 42 ...]
    spectrum-eq oracle <config.json> [overrides]
    spectrum-eq plot <report.json> --space strategy|payoff [--out file.svg]
    spectrum-eq compare <evolved.json> <oracle.json> [--tol T]
    spectrum-eq list

Exit codes: 0 success, 2 usage or config error, 3 enumeration cap exceeded.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .experiment import (ConfigError, EquilibriumReport, bundled_scenarios, compare_fronts,
                         load_config, parse_override_value, run_scenario, with_seed)
from .game import GameError
from .oracle import EnumerationCapError

EXIT_OK, EXIT_USAGE, EXIT_RESOURCE = 0, 2, 3

log = logging.getLogger("spectrum_eq")


def _split_overrides(extra):
    overrides = {}
    it = iter(extra)
    for tok in it:
        if not tok.startswith("--") or len(tok) == 2:
            raise ConfigError(f"unexpected argument {tok!r}")
        key = tok[2:]
        if "=" in key:
            key, value = key.split("=", 1)
        else:
            value = next(it, None)
            if value is None:
                raise ConfigError(f"override {tok} needs a value")
        overrides[key] = parse_override_value(value)
    return overrides


def _summary(report):
    counts = {}
    for r in report.rows:
        counts[r.source] = counts.get(r.source, 0) + 1
    return ", ".join(f"{k}: {v} point(s)" for k, v in counts.items()) or "no points"


def _run_one(config):
    report = run_scenario(config)
    return config.output, _summary(report)


def cmd_solve(args, extra, force_mode=None):
    overrides = _split_overrides(extra)
    if force_mode:
        overrides["mode"] = force_mode
    config = load_config(args.config, overrides)
    if args.runs <= 1:
        out, summary = _run_one(config)
        print(f"{config.name}: {summary} -> {out}")
        return EXIT_OK
    base = config.solver.seed
    configs = [with_seed(config, base + r, str(Path(config.output) / f"seed_{base + r}"))
               for r in range(args.runs)]
    with ProcessPoolExecutor() as pool:
        for out, summary in pool.map(_run_one, configs):
            print(f"{config.name}: {summary} -> {out}")
    return EXIT_OK


def cmd_plot(args, extra):
    if extra:
        raise ConfigError(f"unexpected arguments {extra}")
    from .plotting import emit_plot

    report = EquilibriumReport.load(args.report)
    out = Path(args.out) if args.out else Path(args.report).with_name(f"{args.space}.svg")
    emit_plot(report, args.space, out)
    print(out)
    return EXIT_OK


def cmd_compare(args, extra):
    if extra:
        raise ConfigError(f"unexpected arguments {extra}")
    a = EquilibriumReport.load(args.evolved)
    b = EquilibriumReport.load(args.oracle)
    result = compare_fronts(a, b, args.tol)
    print(json.dumps({
        "matched": len(result.matched),
        "false_positives": result.false_positives,
        "missed": result.missed,
        "tolerance": result.tolerance,
    }, indent=2))
    return EXIT_OK


def cmd_list(args, extra):
    for name in bundled_scenarios():
        print(name)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="spectrum-eq", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="run a scenario (mode taken from the config)")
    p.add_argument("config", help="JSON config path or bundled scenario name")
    p.add_argument("--runs", type=int, default=1, help="run R consecutive seeds in parallel")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("oracle", help="exact front of a discrete scenario")
    p.add_argument("config")
    p.set_defaults(func=lambda a, e: cmd_solve(a, e, force_mode="oracle"), runs=1)

    p = sub.add_parser("plot", help="render report.json as SVG")
    p.add_argument("report")
    p.add_argument("--space", choices=("strategy", "payoff"), required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("compare", help="match an evolved front against an oracle front")
    p.add_argument("evolved")
    p.add_argument("oracle")
    p.add_argument("--tol", type=float, default=None)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("list", help="list bundled scenarios")
    p.set_defaults(func=cmd_list)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args, extra = parser.parse_known_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args, extra)
    except (ConfigError, GameError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except EnumerationCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())

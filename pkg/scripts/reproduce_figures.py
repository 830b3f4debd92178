"""Run every bundled scenario and print a one-line summary per run.

    python3 scripts/reproduce_figures.py [--out results] [--only fig7_]
"""
import argparse
import json
import time
from dataclasses import replace
from pathlib import Path

from spectrum_eq.experiment import bundled_scenarios, load_config, run_scenario


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="results")
    ap.add_argument("--only", default="", help="run scenarios whose name starts with this")
    ap.add_argument("--no-plot", action="store_true")
    args = ap.parse_args()

    for name in bundled_scenarios():
        if not name.startswith(args.only):
            continue
        cfg = replace(load_config(name), output=str(Path(args.out) / name))
        if args.no_plot:
            cfg = replace(cfg, plot=())
        start = time.perf_counter()
        report = run_scenario(cfg)
        took = time.perf_counter() - start
        evolved = report.profiles("evolved")
        line = f"{name:28s} {str(cfg.rationality):6s} evolved={len(evolved):4d}"
        if cfg.mode == "both":
            diff = json.loads((Path(cfg.output) / "diff.json").read_text())
            line += (f" oracle={len(report.profiles('oracle')):4d}"
                     f" false_pos={len(diff['false_positives'])} missed={len(diff['missed'])}")
        print(f"{line}  {took:6.2f}s  -> {cfg.output}")


if __name__ == "__main__":
    main()

"""Command line entry point: ``hybridbat run`` and ``hybridbat replicate-paper``."""

from __future__ import annotations

import argparse
import logging
import sys
import time

from .harness import ExperimentConfig, load_config, run_experiment, write_outputs

log = logging.getLogger("hybridbat")

# CLI flag dest -> config key
_RUN_FLAGS = {
    "function": str,
    "dim": str,
    "algo": str,
    "runs": int,
    "seed": int,
    "generations": int,
    "pop_size": int,
    "alpha": float,
    "gamma": float,
    "epsilon": float,
    "de_f": float,
    "de_cr": float,
    "strategy": str,
    "workers": int,
}


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, help="master seed (default 42)")
    p.add_argument("--out-dir", default="results", help="output directory (default: ./results)")
    p.add_argument("--workers", type=int, help="parallel worker processes (default 1)")
    p.add_argument("-v", "--verbose", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hybridbat", description="Bat Algorithm / Hybrid Bat Algorithm benchmark runner")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a chosen slice of the benchmark matrix")
    run.add_argument("--function", help="comma list of f1..f5 or long names (default: all five)")
    run.add_argument("--dim", help="comma list of dimensions (default: 10,20,30)")
    run.add_argument("--algo", help="ba, hba or ba,hba (default: both)")
    run.add_argument("--runs", type=int, help="runs per cell (default 25)")
    run.add_argument("--generations", type=int, help="generation budget for every dimension (default: 1000/2000/3000 for D=10/20/30)")
    run.add_argument("--pop-size", type=int, help="number of bats (default 30)")
    run.add_argument("--alpha", type=float, help="loudness decay (default 0.9)")
    run.add_argument("--gamma", type=float, help="pulse-rate growth (default 0.9)")
    run.add_argument("--epsilon", type=float, help="local walk scale (default 0.1)")
    run.add_argument("--de-f", type=float, help="DE scale factor F (default 0.5)")
    run.add_argument("--de-cr", type=float, help="DE crossover rate CR (default 0.9)")
    run.add_argument("--strategy", help="DE strategy (only DE/rand/1/bin executes)")
    run.add_argument("--config", help="INI file with an [experiment] section; flags override it")
    _add_common(run)

    rep = sub.add_parser("replicate-paper", help="full 5 functions x 3 dimensions x 2 algorithms matrix, 25 runs per cell")
    _add_common(rep)
    return parser


def _config_from_args(args) -> ExperimentConfig:
    values = {}
    if args.command == "run":
        if args.config:
            values.update(load_config(args.config))
        for key in _RUN_FLAGS:
            v = getattr(args, key, None)
            if v is not None:
                values[key] = v
    else:
        for key in ("seed", "workers"):
            if getattr(args, key) is not None:
                values[key] = getattr(args, key)
    return ExperimentConfig.from_mapping(values)


def _print_table(summaries) -> None:
    print(f"{'alg':<4} {'fn':<3} {'D':>3} {'best':>12} {'worst':>12} {'mean':>12} {'median':>12} {'stdev':>12}")
    for (algo, fn, d), s in summaries.items():
        print(f"{algo:<4} {fn:<3} {d:>3} {s.best:12.4e} {s.worst:12.4e} {s.mean:12.4e} {s.median:12.4e} {s.stdev:12.4e}")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        config = _config_from_args(args)
    except (ValueError, OSError) as exc:
        print(f"hybridbat: error: {exc}", file=sys.stderr)
        return 2
    start = time.perf_counter()
    summaries, _ = run_experiment(config)
    paths = write_outputs(config, summaries, args.out_dir)
    _print_table(summaries)
    log.info("finished in %.1f s", time.perf_counter() - start)
    for p in paths:
        print(f"wrote {p}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

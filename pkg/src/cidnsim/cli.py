"""Command-line front end: one subcommand per experiment plus `all`."""

from __future__ import annotations

import argparse
import os
import sys

from .config import ConfigError, load_config
from .experiments import EXPERIMENT_IDS, emit_csv, run_experiment

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cidnsim",
        description="Simulate feedback aggregation in a collaborative "
        "intrusion detection network and emit figure data as CSV.",
    )
    sub = parser.add_subparsers(dest="experiment", required=True)
    for name in EXPERIMENT_IDS + ("all",):
        p = sub.add_parser(name, help=_HELP[name])
        p.add_argument("--config", help="experiment config file (key = value lines)")
        p.add_argument("--seed", type=int, help="override the base RNG seed")
        p.add_argument(
            "--replications", type=int, help="override the replication count"
        )
        p.add_argument(
            "--out",
            help="output CSV path (for `all`: a directory); default stdout",
        )
        p.add_argument(
            "--order",
            choices=("trust", "list", "random"),
            default="trust",
            help="sequential consultation order (default: trust)",
        )
    return parser


_HELP = {
    "fig2": "peer FP/FN rates vs expertise",
    "fig3": "peer FP/FN rates vs feedback threshold",
    "fig4": "aggregation cost and accuracy vs feedback threshold",
    "fig5": "aggregation cost vs miss cost",
    "fig6": "accuracy vs consultation cap",
    "fig7": "mean consultations to reach the error targets vs expertise",
    "all": "run every experiment",
}


def _run(args: argparse.Namespace) -> int:
    overrides = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.replications is not None:
        overrides["replications"] = args.replications
    config = load_config(args.config, **overrides)

    targets = EXPERIMENT_IDS if args.experiment == "all" else (args.experiment,)
    results = [(name, run_experiment(name, config, order=args.order)) for name in targets]

    if args.out is None:
        for i, (name, rows) in enumerate(results):
            if len(results) > 1:
                if i:
                    sys.stdout.write("\n")
                sys.stdout.write(f"# {name}\n")
            emit_csv(rows, sys.stdout)
        return EXIT_OK
    if args.experiment == "all":
        os.makedirs(args.out, exist_ok=True)
        for name, rows in results:
            emit_csv(rows, os.path.join(args.out, f"{name}.csv"))
    else:
        emit_csv(results[0][1], args.out)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _run(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

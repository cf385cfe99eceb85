"""``bdop <experiment> --config <path> [--output <path>] [--seed <u64>]``

Writes the CSV table to ``--output`` (or the config's ``output_path``, or
stdout) and a pass/fail summary to stderr.  Exit status: 0 when every
criterion passes, 1 when any fails, 2 on configuration or I/O errors.
"""

import argparse
import sys

from .config import EXPERIMENTS, ExperimentConfig, load_config
from .errors import ConfigError, DomainError, HypothesisViolation
from .experiments import run_experiment


def build_parser():
    parser = argparse.ArgumentParser(
        prog="bdop", description="Convergence experiments for Bernstein-type operators."
    )
    parser.add_argument("experiment", choices=EXPERIMENTS)
    parser.add_argument("--config", help="experiment configuration file")
    parser.add_argument("--output", help="CSV output path (default: stdout)")
    parser.add_argument("--seed", type=int, help="64-bit seed, overrides the config")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.config:
            cfg = load_config(args.config, args.experiment)
        else:
            cfg = ExperimentConfig(args.experiment)
        if args.seed is not None:
            if not 0 <= args.seed < 2**64:
                raise ConfigError("--seed must be a 64-bit unsigned integer")
            cfg.seed = args.seed
        report = run_experiment(cfg)
    except ConfigError as exc:
        print(f"bdop: config error: {exc}", file=sys.stderr)
        return 2
    except (HypothesisViolation, DomainError, OSError) as exc:
        print(f"bdop: {exc}", file=sys.stderr)
        return 2

    out_path = args.output or cfg.output_path
    text = report.to_csv()
    try:
        if out_path:
            with open(out_path, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    except OSError as exc:
        print(f"bdop: {exc}", file=sys.stderr)
        return 2
    print(report.summary(), file=sys.stderr)
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())

"""Command line front end: run sweeps, re-plot CSVs, run bundled presets.

Exit codes: 0 on success, 2 on configuration or I/O errors.
"""

from __future__ import annotations

import argparse
import sys
from importlib import resources
from pathlib import Path

from .config import load_experiment_config, parse_experiment_config
from .experiments import (
    ConfigError,
    read_result_csv,
    run_experiment,
    with_overrides,
    write_csv,
)
from .plotting import write_plot

PRESETS = ("fig1", "fig2", "fig3", "fig4", "fig5")


def load_preset(name: str):
    if name not in PRESETS:
        raise ConfigError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")
    text = resources.files("housedl.presets").joinpath(f"{name}.cfg").read_text()
    return parse_experiment_config(text)


def _add_common(sub) -> None:
    sub.add_argument("--seed", type=int, default=None, help="override the config seed")
    sub.add_argument("--zeta", type=float, default=None, help="override the hard threshold")
    sub.add_argument("--threads", type=int, default=1, help="trial-level worker threads")
    sub.add_argument("--out-dir", default="results", help="output directory")


def _run_spec(spec, args) -> None:
    spec = with_overrides(spec, seed=args.seed, zeta=args.zeta)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    rows = list(run_experiment(spec, threads=args.threads))
    csv_path = out_dir / f"{spec.experiment_kind}.csv"
    svg_path = out_dir / f"{spec.experiment_kind}.svg"
    write_csv(rows, csv_path, include_timing=spec.record_timing)
    write_plot(rows, svg_path)
    print(f"wrote {csv_path} ({len(rows)} rows)")
    print(f"wrote {svg_path}")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="housedl",
        description="Reflector-dictionary learning experiment runner",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    run_cmd = commands.add_parser("run", help="run a sweep from a config file")
    run_cmd.add_argument("config", help="path to an experiment config")
    _add_common(run_cmd)

    plot_cmd = commands.add_parser("plot", help="re-plot a results CSV")
    plot_cmd.add_argument("csv", help="path to a results CSV")
    _add_common(plot_cmd)

    demo_cmd = commands.add_parser("demo", help="run a bundled preset")
    demo_cmd.add_argument("preset", choices=PRESETS)
    _add_common(demo_cmd)

    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            _run_spec(load_experiment_config(args.config), args)
        elif args.command == "demo":
            _run_spec(load_preset(args.preset), args)
        else:
            rows = read_result_csv(args.csv)
            out_dir = Path(args.out_dir)
            out_dir.mkdir(parents=True, exist_ok=True)
            svg_path = out_dir / (Path(args.csv).stem + ".svg")
            write_plot(rows, svg_path)
            print(f"wrote {svg_path}")
    except (ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())

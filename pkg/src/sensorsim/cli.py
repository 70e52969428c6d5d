"""
Command line entry point.

Verbs: ``simulate``, ``montecarlo``, ``seeds`` and ``theory``. Exit codes:
0 success, 2 configuration error, 3 data error, 4 validation failure.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from .config import ConfigError, RunConfig, load_config
from .montecarlo import QUANTITIES, compare_to_theory, monte_carlo_single_axis, theory_table
from .seedstream import SeedCatalog, build_catalog, derive_sensor_seeds
from .simulation import run_simulation, write_outputs
from .trajectory import DataError, format_float, load_truth

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DATA = 3
EXIT_VALIDATION = 4


def _config(args) -> RunConfig:
    return load_config(args.config) if args.config else RunConfig()


def _checkpoints(horizon: float, count: int) -> np.ndarray:
    if horizon <= 0 or count < 1:
        raise ConfigError("horizon and checkpoint count must be positive")
    return horizon * np.arange(1, count + 1) / count


def cmd_simulate(args) -> int:
    cfg = _config(args)
    changes = {}
    if args.aircraft is not None:
        changes["aircraft_index"] = args.aircraft
    if args.flight is not None:
        changes["flight_index"] = args.flight
    if changes:
        cfg = replace(cfg, aircraft_seed=None, flight_seed=None, **changes)
    truth_path = args.truth or cfg.truth_path
    out_dir = args.out or cfg.out_dir
    if not truth_path or not out_dir:
        raise ConfigError("simulate needs --truth and --out (or [run] truth/out)")
    try:
        truth = load_truth(truth_path)
    except OSError as exc:
        raise DataError(f"cannot read truth: {exc}") from None
    result = run_simulation(cfg, truth)
    for path in write_outputs(result, out_dir):
        print(path)
    return EXIT_OK


def _write_rows(out, header, rows) -> None:
    lines = [",".join(header)] + [",".join(format_float(x) for x in row) for row in rows]
    text = "\n".join(lines) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_montecarlo(args) -> int:
    cfg = _config(args)
    sa = cfg.single_axis
    spec = sa.spec.unclamped() if args.unclamped else sa.spec
    checkpoints = _checkpoints(args.horizon, args.checkpoints)
    table = monte_carlo_single_axis(
        spec, args.runs, args.horizon, checkpoints, sa.f0, sa.g0, args.master_seed, args.workers
    )
    header = ["t"] + [f"{q}_{s}" for q in QUANTITIES for s in ("mean", "std")]
    cols = [table.checkpoints] + [x for q in QUANTITIES for x in (table.mean(q), table.std(q))]
    _write_rows(args.out, header, np.column_stack(cols))
    if table.runs < 2:
        return EXIT_OK
    report = compare_to_theory(table, spec)
    for c in report.checks:
        flag = "ok" if c.variance_ok and c.mean_ok else "FAIL"
        print(f"{c.quantity:6s} t={c.t:g} var={c.variance:.4g} band=[{c.band_low:.4g}, {c.band_high:.4g}] "
              f"z={c.z:+.2f} {flag}", file=sys.stderr)  # fmt: skip
    return EXIT_OK if report.passed else EXIT_VALIDATION


def cmd_seeds(args) -> int:
    if args.load:
        catalog = SeedCatalog.load(args.load)
    else:
        catalog = build_catalog(args.master_seed, args.capacity)
    if args.aircraft is not None or args.flight is not None:
        pair = catalog.pair(args.aircraft or 0, args.flight or 0)
        seeds = derive_sensor_seeds(*pair)
        print(f"aircraft_seed {pair[0]}")
        print(f"flight_seed {pair[1]}")
        for name, value in seeds.fixed.items():
            print(f"fixed.{name} {value}")
        for name, value in seeds.run.items():
            print(f"run.{name} {value}")
        return EXIT_OK
    if args.out:
        catalog.save(args.out)
        print(args.out)
    else:
        for i, (a, f) in enumerate(zip(catalog.aircraft_seeds, catalog.flight_seeds)):
            print(f"{i} {a} {f}")
    return EXIT_OK


def cmd_theory(args) -> int:
    cfg = _config(args)
    sa = cfg.single_axis
    t = _checkpoints(args.horizon, args.checkpoints)
    th = theory_table(sa.spec, t, sa.f0, sa.g0, exact=not args.approximate)
    header = ["t"] + [f"{q}_{s}" for q in QUANTITIES for s in ("mean", "std")]
    cols = [t] + [x for q in QUANTITIES for x in (th[q]["mean"], np.sqrt(th[q]["variance"]))]
    _write_rows(args.out, header, np.column_stack(cols))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sensorsim", description="Stochastic aircraft sensor simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="turn a truth trajectory into sensed outputs")
    p.add_argument("--config", help="INI configuration file")
    p.add_argument("--truth", help="truth CSV")
    p.add_argument("--out", help="output directory")
    p.add_argument("--aircraft", type=int, help="aircraft index into the seed catalog")
    p.add_argument("--flight", type=int, help="flight index into the seed catalog")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("montecarlo", help="single-axis Monte-Carlo validation")
    p.add_argument("--config", help="INI file with a [single_axis] section")
    p.add_argument("--runs", type=int, default=200)
    p.add_argument("--horizon", type=float, default=1000.0, help="seconds")
    p.add_argument("--checkpoints", type=int, default=10)
    p.add_argument("--master-seed", type=int, default=1)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--unclamped", action="store_true", help="disable drift saturation")
    p.add_argument("--out", help="CSV path (stdout if omitted)")
    p.set_defaults(func=cmd_montecarlo)

    p = sub.add_parser("seeds", help="generate or inspect the seed catalog")
    p.add_argument("--master-seed", type=int, default=1)
    p.add_argument("--capacity", type=int, default=16)
    p.add_argument("--load", help="read a saved catalog instead of generating one")
    p.add_argument("--aircraft", type=int)
    p.add_argument("--flight", type=int)
    p.add_argument("--out", help="save the catalog to this path")
    p.set_defaults(func=cmd_seeds)

    p = sub.add_parser("theory", help="print closed-form mean/std tables")
    p.add_argument("--config", help="INI file with a [single_axis] section")
    p.add_argument("--horizon", type=float, default=1000.0)
    p.add_argument("--checkpoints", type=int, default=100)
    p.add_argument("--approximate", action="store_true", help="use the large-time power laws")
    p.add_argument("--out", help="CSV path (stdout if omitted)")
    p.set_defaults(func=cmd_theory)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (ValueError, IndexError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())

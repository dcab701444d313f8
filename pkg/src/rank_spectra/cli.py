"""Command-line entry point.

Subcommands: simulate, density, distance, check-moments, ranks.
Exit codes: 0 success, 2 config error, 3 degenerate-input error,
4 numeric failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

import numpy as np

from . import depmat, harness
from .errors import (
    DegenerateRowError,
    DomainError,
    NumericError,
    ParameterError,
    ZeroScalingError,
)
from .lsd import LawModel, law_density, law_support
from .moments import estimate_conditions
from .ranks import fractional_ranks, rank_rows, spearman_rows
from .spectra import SpectralSample, ks_distance

_MOMENT_BUILDERS = {
    "spearman": lambda x: spearman_rows(rank_rows(x)),
    "unit_sphere_spearman_rows": lambda x: spearman_rows(rank_rows(x)),
    "corr": lambda x: depmat.correlation_rows(x, centered=False),
    "corr_centered": lambda x: depmat.correlation_rows(x, centered=True),
}


def _load_config(path: str) -> harness.ExperimentConfig:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParameterError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(data, dict):
        raise ParameterError(f"{path}: config must be a JSON object")
    return harness.config_from_dict(data)


def _law_from_args(args) -> LawModel:
    if args.law == "mp":
        if args.gamma is None:
            raise ParameterError("--law mp requires --gamma")
        return LawModel.marchenko_pastur(args.gamma, scale=args.scale, shift=args.shift)
    return LawModel.semicircle(scale=args.scale, shift=args.shift)


def _add_law_args(sub) -> None:
    sub.add_argument("--law", required=True, choices=("mp", "semicircle"))
    sub.add_argument("--gamma", type=float, default=None)
    sub.add_argument("--scale", type=float, default=1.0)
    sub.add_argument("--shift", type=float, default=0.0)


def _cmd_simulate(args) -> int:
    config = _load_config(args.config)
    result = harness.run(config)
    paths = harness.emit(result, args.out)
    print(f"ks={result.ks!r} files={paths['result']}")
    return 0


def _cmd_density(args) -> int:
    model = _law_from_args(args)
    if args.range is not None:
        lo, hi = args.range
        if not hi > lo:
            raise ParameterError("--range needs hi > lo")
    else:
        lo, hi = law_support(model)
    xs = np.linspace(lo, hi, args.points)
    dens = np.asarray(law_density(model, xs), dtype=np.float64)
    harness._write_atomic(args.out, harness._csv(["x", "density"], zip(xs, dens)))
    return 0


def _read_csv_column(path: str, column: str) -> np.ndarray:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or column not in reader.fieldnames:
            raise ParameterError(f"{path}: expected a header row containing {column!r}")
        try:
            values = [float(row[column]) for row in reader]
        except (TypeError, ValueError) as exc:
            raise ParameterError(f"{path}: non-numeric value in column {column!r}") from exc
    if not values:
        raise ParameterError(f"{path}: no data rows")
    return np.asarray(values, dtype=np.float64)


def _cmd_distance(args) -> int:
    eigs = _read_csv_column(args.eigs, "eigenvalue")
    model = _law_from_args(args)
    print(ks_distance(SpectralSample(eigs=eigs), model))
    return 0


def _cmd_check_moments(args) -> int:
    config = _load_config(args.config)
    builder = _MOMENT_BUILDERS.get(config.matrix_kind)
    if builder is None:
        raise ParameterError(
            f"check-moments supports {sorted(_MOMENT_BUILDERS)}, not {config.matrix_kind!r}"
        )
    report = estimate_conditions(
        builder, config.pattern, config.p, config.n, reps=args.reps, seed=config.seed
    )
    print(
        json.dumps(
            {
                "c4": report.c4,
                "c_cross": report.c_cross,
                "reps": report.reps,
                "stderr4": report.stderr4,
                "stderr_cross": report.stderr_cross,
            },
            indent=2,
            sort_keys=True,
        )
    )
    return 0


def _cmd_ranks(args) -> int:
    with open(args.infile, newline="") as fh:
        reader = csv.reader(fh)
        rows = list(reader)
    if len(rows) < 2:
        raise ParameterError(f"{args.infile}: need a header row plus data rows")
    header, data = rows[0], rows[1:]
    try:
        values = np.asarray([[float(v) for v in row] for row in data], dtype=np.float64)
    except ValueError as exc:
        raise ParameterError(f"{args.infile}: non-numeric cell ({exc})") from exc
    if values.shape[1] != len(header):
        raise ParameterError(f"{args.infile}: ragged rows")
    # ranks are taken column-wise: each CSV column is one variable
    ranked = np.column_stack([fractional_ranks(values[:, j]) for j in range(values.shape[1])])
    text = harness._csv(header, ranked)
    if args.out:
        harness._write_atomic(args.out, text)
    else:
        sys.stdout.write(text)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rank-spectra",
        description="Spectra of rank-based dependency matrices vs their limiting laws.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run one experiment from a JSON config")
    sim.add_argument("--config", required=True)
    sim.add_argument("--out", required=True)
    sim.set_defaults(func=_cmd_simulate)

    dens = sub.add_parser("density", help="tabulate a law's density to CSV")
    _add_law_args(dens)
    dens.add_argument("--points", type=int, default=512)
    dens.add_argument("--range", type=float, nargs=2, metavar=("LO", "HI"), default=None)
    dens.add_argument("--out", required=True)
    dens.set_defaults(func=_cmd_density)

    dist = sub.add_parser("distance", help="KS distance between eigs.csv and a law")
    dist.add_argument("--eigs", required=True)
    _add_law_args(dist)
    dist.set_defaults(func=_cmd_distance)

    mom = sub.add_parser("check-moments", help="Monte Carlo moment-condition report")
    mom.add_argument("--config", required=True)
    mom.add_argument("--reps", type=int, default=200)
    mom.set_defaults(func=_cmd_check_moments)

    rk = sub.add_parser("ranks", help="column-wise fractional ranks of a CSV (debugging aid)")
    rk.add_argument("--in", dest="infile", required=True)
    rk.add_argument("--out", default=None)
    rk.set_defaults(func=_cmd_ranks)

    return parser


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ParameterError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DegenerateRowError, ZeroScalingError) as exc:
        print(f"degenerate input: {exc}", file=sys.stderr)
        return 3
    except NumericError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 4
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

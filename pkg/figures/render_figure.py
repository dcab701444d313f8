#!/usr/bin/env python3
"""Publication-style figure from harness output files: normalized eigenvalue
histogram bars with an optional theoretical density curve overlaid.

Consumes only the serialized CSVs (hist.csv, law.csv) written by the
`rank-spectra simulate` pipeline; nothing is recomputed here.

Usage:
    render_figure.py --hist hist.csv [--law law.csv] --out fig.png [--title "..."]
"""

from __future__ import annotations

import argparse
import csv
import sys

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


class SchemaError(Exception):
    """Input file missing, unreadable, or not in the harness CSV schema."""


def _read_columns(path: str, expected: list[str]) -> dict[str, list[float]]:
    try:
        with open(path, newline="") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames != expected:
                raise SchemaError(
                    f"{path}: expected header {','.join(expected)!r}, "
                    f"got {reader.fieldnames!r}"
                )
            out: dict[str, list[float]] = {name: [] for name in expected}
            for row in reader:
                for name in expected:
                    try:
                        out[name].append(float(row[name]))
                    except (TypeError, ValueError):
                        raise SchemaError(f"{path}: non-numeric value in column {name!r}")
    except OSError as exc:
        raise SchemaError(f"{path}: {exc.strerror or exc}")
    if not out[expected[0]]:
        raise SchemaError(f"{path}: no data rows")
    return out


def read_hist(path: str) -> dict[str, list[float]]:
    return _read_columns(path, ["bin_left", "bin_right", "density"])


def read_law(path: str) -> dict[str, list[float]]:
    return _read_columns(path, ["x", "density"])


def build_figure(hist_path: str, law_path: str | None = None, title: str | None = None):
    """Assemble the figure; returns it so callers/tests can inspect the artists."""
    hist = read_hist(hist_path)
    widths = [r - l for l, r in zip(hist["bin_left"], hist["bin_right"])]

    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.bar(
        hist["bin_left"],
        hist["density"],
        width=widths,
        align="edge",
        color="#9ecae1",
        edgecolor="#4292c6",
        linewidth=0.5,
        label="eigenvalue histogram",
    )
    if law_path is not None:
        law = read_law(law_path)
        ax.plot(law["x"], law["density"], color="crimson", linewidth=1.8, label="limiting density")
    ax.set_xlabel("eigenvalue")
    ax.set_ylabel("density")
    if title:
        ax.set_title(title)
    ax.legend(frameon=False)
    fig.tight_layout()
    return fig


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--hist", required=True, help="hist.csv from the simulation harness")
    parser.add_argument("--law", default=None, help="law.csv density curve (optional)")
    parser.add_argument("--out", required=True, help="output image path (.png)")
    parser.add_argument("--title", default=None)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        fig = build_figure(args.hist, args.law, args.title)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    fig.savefig(args.out, dpi=150)
    plt.close(fig)
    return 0


if __name__ == "__main__":
    sys.exit(main())

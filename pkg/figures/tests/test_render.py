"""Figure pipeline: harness CSVs in, PNG out, data series preserved.

The primary package is exercised only through its command-line interface;
these tests never import it.
"""

import csv
import json
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

import render_figure

FIGURES_DIR = Path(__file__).resolve().parents[1]
RENDER = FIGURES_DIR / "render_figure.py"

CONFIG_KENDALL_MP = {
    "matrix_kind": "kendall_T",
    "pattern": [
        {"dist": "bernoulli", "params": {"m": 0.1}},
        {"dist": "bernoulli", "params": {"m": 0.4}},
        {"dist": "bernoulli", "params": {"m": 0.7}},
        {"dist": "bernoulli", "params": {"m": 0.8}},
    ],
    "p": 400,
    "n": 600,
    "seed": 103,
    "bins": 50,
    "range": None,
    "scaling": "mp",
}

CONFIG_KENDALL_SEMICIRCLE = {
    "matrix_kind": "kendall_T",
    "pattern": [{"dist": "bernoulli", "params": {"m": 0.5}}],
    "p": 150,
    "n": 15000,
    "seed": 104,
    "bins": 50,
    "range": None,
    "scaling": "semicircle",
}


def simulate(tmp_path, name, config):
    assert shutil.which("rank-spectra"), "primary CLI must be installed"
    cfg_path = tmp_path / f"{name}.json"
    cfg_path.write_text(json.dumps(config))
    out_dir = tmp_path / name
    subprocess.run(
        ["rank-spectra", "simulate", "--config", str(cfg_path), "--out", str(out_dir)],
        check=True,
        capture_output=True,
    )
    return out_dir


def read_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    return {k: [float(r[k]) for r in rows] for k in rows[0]}


@pytest.mark.parametrize(
    "name,config",
    [("kendall_mp", CONFIG_KENDALL_MP), ("kendall_semicircle", CONFIG_KENDALL_SEMICIRCLE)],
)
def test_end_to_end_figure_matches_csv_series(tmp_path, name, config):
    out_dir = simulate(tmp_path, name, config)
    png = tmp_path / f"{name}.png"
    proc = subprocess.run(
        [
            sys.executable,
            str(RENDER),
            "--hist",
            str(out_dir / "hist.csv"),
            "--law",
            str(out_dir / "law.csv"),
            "--out",
            str(png),
            "--title",
            name,
        ],
        capture_output=True,
    )
    assert proc.returncode == 0, proc.stderr.decode()
    assert png.exists() and png.stat().st_size > 5000

    # the figure's data series must be exactly the CSV contents
    fig = render_figure.build_figure(str(out_dir / "hist.csv"), str(out_dir / "law.csv"), name)
    ax = fig.axes[0]
    hist = read_csv(out_dir / "hist.csv")
    law = read_csv(out_dir / "law.csv")

    bars = ax.patches
    assert len(bars) == len(hist["density"])
    assert [b.get_height() for b in bars] == hist["density"]
    assert [b.get_x() for b in bars] == hist["bin_left"]

    (line,) = ax.get_lines()
    assert line.get_xdata().tolist() == law["x"]
    assert line.get_ydata().tolist() == law["density"]


def test_hist_only_renders_without_overlay(tmp_path):
    hist = tmp_path / "hist.csv"
    hist.write_text("bin_left,bin_right,density\n0.0,0.5,1.0\n0.5,1.0,1.0\n")
    fig = render_figure.build_figure(str(hist))
    ax = fig.axes[0]
    assert len(ax.patches) == 2
    assert len(ax.get_lines()) == 0

    png = tmp_path / "bars.png"
    assert render_figure.main(["--hist", str(hist), "--out", str(png)]) == 0
    assert png.exists()


def test_rerender_is_byte_identical(tmp_path):
    hist = tmp_path / "hist.csv"
    hist.write_text("bin_left,bin_right,density\n0.0,0.5,0.4\n0.5,1.0,1.6\n")
    a, b = tmp_path / "a.png", tmp_path / "b.png"
    assert render_figure.main(["--hist", str(hist), "--out", str(a)]) == 0
    assert render_figure.main(["--hist", str(hist), "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_schema_errors_exit_nonzero(tmp_path):
    missing = tmp_path / "nope.csv"
    assert render_figure.main(["--hist", str(missing), "--out", str(tmp_path / "x.png")]) == 2

    bad = tmp_path / "bad.csv"
    bad.write_text("left,right,dens\n0,1,1\n")
    assert render_figure.main(["--hist", str(bad), "--out", str(tmp_path / "x.png")]) == 2

    partial = tmp_path / "partial.csv"
    partial.write_text("bin_left,bin_right,density\n0.0,0.5,oops\n")
    assert render_figure.main(["--hist", str(partial), "--out", str(tmp_path / "x.png")]) == 2

    hist = tmp_path / "hist.csv"
    hist.write_text("bin_left,bin_right,density\n0.0,0.5,1.0\n")
    badlaw = tmp_path / "law.csv"
    badlaw.write_text("x\n1.0\n")
    assert (
        render_figure.main(
            ["--hist", str(hist), "--law", str(badlaw), "--out", str(tmp_path / "x.png")]
        )
        == 2
    )

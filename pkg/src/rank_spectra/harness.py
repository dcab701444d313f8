"""Experiment runner: config -> data -> dependency matrix -> reference law ->
spectrum -> KS distance -> serialized results.

A run is deterministic given its seed; everything in result.json except
wall_time_seconds is reproducible byte for byte. Output files are written
atomically (temp file + rename) as CSV with a header row, '.' decimals and
LF line endings.
"""

from __future__ import annotations

import json
import math
import os
import tempfile
import time
from dataclasses import dataclass

import numpy as np

from . import depmat
from .datagen import DataMatrix, DistributionSpec, RowPattern, sample_matrix
from .errors import ParameterError, UnsupportedCombinationError
from .lsd import LawModel, law_density
from .moments import variance_factor
from .ranks import degeneracy_diagnostic, kendall_scaling, rank_rows, spearman_rows
from .spectra import HistogramResult, SpectralSample, affine_spectrum, eigenvalues_sym, histogram, ks_distance

__all__ = [
    "ExperimentConfig",
    "ExperimentResult",
    "config_from_dict",
    "reference_law",
    "run",
    "emit",
]

MATRIX_KINDS = (
    "spearman",
    "kendall_T",
    "kendall_tau_offdiag",
    "corr",
    "corr_centered",
    "unit_sphere_spearman_rows",
)
_UNIT_DIAG_KINDS = frozenset({"spearman", "corr", "corr_centered", "unit_sphere_spearman_rows"})
_KENDALL_KINDS = frozenset({"kendall_T", "kendall_tau_offdiag"})
_SCALINGS = ("auto", "mp", "semicircle")

# below this aspect ratio 'auto' switches to the semicircle regime
AUTO_SEMICIRCLE_THRESHOLD = 0.05

_LAW_CURVE_POINTS = 512


@dataclass(frozen=True)
class ExperimentConfig:
    matrix_kind: str
    pattern: RowPattern
    p: int
    n: int
    seed: int
    bins: int = 60
    range: tuple[float, float] | None = None
    scaling: str = "auto"

    def __post_init__(self):
        if self.matrix_kind not in MATRIX_KINDS:
            raise ParameterError(f"unknown matrix_kind {self.matrix_kind!r}")
        if self.scaling not in _SCALINGS:
            raise ParameterError(f"unknown scaling {self.scaling!r}")
        if self.p < 2 or self.n < 2:
            raise ParameterError(f"need p >= 2 and n >= 2, got p={self.p}, n={self.n}")
        if self.bins < 1:
            raise ParameterError(f"need bins >= 1, got {self.bins}")
        if self.range is not None:
            lo, hi = self.range
            if not hi > lo:
                raise ParameterError(f"need range hi > lo, got {self.range}")
            object.__setattr__(self, "range", (float(lo), float(hi)))

    @property
    def gamma_p(self) -> float:
        return self.p / self.n

    def resolved_scaling(self) -> str:
        if self.scaling != "auto":
            return self.scaling
        return "semicircle" if self.gamma_p < AUTO_SEMICIRCLE_THRESHOLD else "mp"

    def to_dict(self) -> dict:
        return {
            "matrix_kind": self.matrix_kind,
            "pattern": [_spec_to_dict(s) for s in self.pattern.specs],
            "p": self.p,
            "n": self.n,
            "seed": self.seed,
            "bins": self.bins,
            "range": list(self.range) if self.range is not None else None,
            "scaling": self.scaling,
        }


def _spec_to_dict(spec: DistributionSpec) -> dict:
    params = {}
    if spec.kind == "bernoulli":
        params["m"] = spec.m
    elif spec.kind == "pareto":
        params["alpha"] = spec.alpha
    elif spec.kind == "student_t":
        params["nu"] = spec.nu
    elif spec.kind == "constant":
        params["c"] = spec.c
    return {"dist": spec.kind, "params": params}


def _spec_from_dict(d: dict) -> DistributionSpec:
    if not isinstance(d, dict) or "dist" not in d:
        raise ParameterError(f"pattern entries need a 'dist' key, got {d!r}")
    params = d.get("params") or {}
    if not isinstance(params, dict):
        raise ParameterError(f"'params' must be an object, got {params!r}")
    try:
        return DistributionSpec(d["dist"], **params)
    except TypeError as exc:
        raise ParameterError(f"bad params for {d['dist']!r}: {params!r}") from exc


def config_from_dict(d: dict) -> ExperimentConfig:
    try:
        pattern = RowPattern(tuple(_spec_from_dict(e) for e in d["pattern"]))
        rng = d.get("range")
        return ExperimentConfig(
            matrix_kind=d["matrix_kind"],
            pattern=pattern,
            p=int(d["p"]),
            n=int(d["n"]),
            seed=int(d["seed"]),
            bins=int(d.get("bins", 60)),
            range=tuple(rng) if rng is not None else None,
            scaling=d.get("scaling", "auto"),
        )
    except KeyError as exc:
        raise ParameterError(f"config is missing key {exc.args[0]!r}") from exc
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ParameterError):
            raise
        raise ParameterError(f"malformed config: {exc}") from exc


@dataclass(frozen=True)
class ExperimentResult:
    config: ExperimentConfig
    spectrum: SpectralSample
    hist: HistogramResult
    law: LawModel
    law_curve_x: np.ndarray
    law_curve_density: np.ndarray
    ks: float
    diag_d_summary: dict | None
    degeneracy_max: float
    wall_time_seconds: float

    def to_json_dict(self) -> dict:
        return {
            "config": self.config.to_dict(),
            "p": self.config.p,
            "n": self.config.n,
            "gamma_p": self.config.gamma_p,
            "scaling_resolved": self.config.resolved_scaling(),
            "eigenvalues": self.spectrum.eigs.tolist(),
            "histogram": {
                "bin_left": self.hist.bin_left.tolist(),
                "bin_right": self.hist.bin_right.tolist(),
                "counts": self.hist.counts.tolist(),
                "density": self.hist.density.tolist(),
            },
            "reference_law": {
                "base": self.law.base,
                "gamma": self.law.gamma,
                "scale": self.law.scale,
                "shift": self.law.shift,
                "label": self.law.label(),
            },
            "law_curve": {
                "x": self.law_curve_x.tolist(),
                "density": self.law_curve_density.tolist(),
            },
            "ks": self.ks,
            "diag_D_summary": self.diag_d_summary,
            "degeneracy_max": self.degeneracy_max,
            "wall_time_seconds": self.wall_time_seconds,
        }


def reference_law(config: ExperimentConfig) -> LawModel:
    """Limiting law matching the configured matrix kind and scaling regime."""
    scaling = config.resolved_scaling()
    kind = config.matrix_kind
    if kind in _UNIT_DIAG_KINDS:
        if scaling == "mp":
            return LawModel.marchenko_pastur(config.gamma_p)
        return LawModel.semicircle()
    if kind == "kendall_T":
        if scaling == "mp":
            return LawModel.marchenko_pastur(config.gamma_p, scale=2.0 / 3.0, shift=-2.0 / 3.0)
        return LawModel.semicircle(scale=2.0 / 3.0)
    # kendall_tau_offdiag: the unadjusted matrix has a pivotal law only in the
    # semicircle regime and only for a single, homogeneous row distribution
    if scaling != "semicircle":
        raise UnsupportedCombinationError(
            "kendall_tau_offdiag has a reference law only under semicircle scaling"
        )
    if not config.pattern.is_homogeneous:
        raise UnsupportedCombinationError(
            "kendall_tau_offdiag needs a homogeneous row pattern for its reference law"
        )
    c = variance_factor(config.pattern.specs[0])
    return LawModel.semicircle(scale=c * 2.0 / 3.0)


def _build_matrix(config: ExperimentConfig, x: DataMatrix):
    kind = config.matrix_kind
    if kind == "spearman":
        return depmat.spearman(rank_rows(x))
    if kind == "unit_sphere_spearman_rows":
        return depmat.gram(spearman_rows(rank_rows(x)))
    if kind == "kendall_T":
        return depmat.kendall_T(x)
    if kind == "kendall_tau_offdiag":
        return depmat.offdiag(depmat.kendall_tau(x))
    if kind == "corr":
        return depmat.sample_correlation(x, centered=False)
    return depmat.sample_correlation(x, centered=True)


def run(config: ExperimentConfig) -> ExperimentResult:
    """End-to-end pipeline for one experiment; deterministic given the seed."""
    t0 = time.perf_counter()
    law = reference_law(config)  # fail fast on unsupported combinations
    x = sample_matrix(config.pattern, config.p, config.n, config.seed)
    degeneracy_max = max(degeneracy_diagnostic(x.entries[i]) for i in range(config.p))

    diag_summary = None
    if config.matrix_kind in _KENDALL_KINDS:
        d = kendall_scaling(rank_rows(x)).d
        diag_summary = {"mean": float(d.mean()), "min": float(d.min()), "max": float(d.max())}

    matrix = _build_matrix(config, x)
    spectrum = eigenvalues_sym(matrix, n=config.n)
    if config.resolved_scaling() == "semicircle":
        a = math.sqrt(config.n / config.p)
        b = -a if config.matrix_kind in _UNIT_DIAG_KINDS else 0.0
        spectrum = affine_spectrum(spectrum, a, b)

    ks = ks_distance(spectrum, law)
    lo, hi = config.range if config.range is not None else _default_range(spectrum)
    hist = histogram(spectrum, lo, hi, config.bins)
    curve_x = np.linspace(lo, hi, _LAW_CURVE_POINTS)
    curve_density = np.asarray(law_density(law, curve_x), dtype=np.float64)

    return ExperimentResult(
        config=config,
        spectrum=spectrum,
        hist=hist,
        law=law,
        law_curve_x=curve_x,
        law_curve_density=curve_density,
        ks=ks,
        diag_d_summary=diag_summary,
        degeneracy_max=float(degeneracy_max),
        wall_time_seconds=time.perf_counter() - t0,
    )


def _default_range(spectrum: SpectralSample) -> tuple[float, float]:
    lo = float(spectrum.eigs.min())
    hi = float(spectrum.eigs.max())
    if hi <= lo:
        lo, hi = lo - 0.5, hi + 0.5
    return lo, hi


def _write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _csv(header: list[str], rows) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(repr(float(v)) for v in row))
    return "\n".join(lines) + "\n"


def emit(result: ExperimentResult, out_dir: str) -> dict[str, str]:
    """Write result.json, eigs.csv, hist.csv and law.csv into out_dir."""
    os.makedirs(out_dir, exist_ok=True)
    paths = {
        "result": os.path.join(out_dir, "result.json"),
        "eigs": os.path.join(out_dir, "eigs.csv"),
        "hist": os.path.join(out_dir, "hist.csv"),
        "law": os.path.join(out_dir, "law.csv"),
    }
    _write_atomic(
        paths["result"], json.dumps(result.to_json_dict(), indent=2, sort_keys=True) + "\n"
    )
    _write_atomic(paths["eigs"], _csv(["eigenvalue"], ((v,) for v in result.spectrum.eigs)))
    _write_atomic(
        paths["hist"],
        _csv(
            ["bin_left", "bin_right", "density"],
            zip(result.hist.bin_left, result.hist.bin_right, result.hist.density),
        ),
    )
    _write_atomic(
        paths["law"],
        _csv(["x", "density"], zip(result.law_curve_x, result.law_curve_density)),
    )
    return paths

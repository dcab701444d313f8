"""Full-spectrum eigensolving, empirical spectral distributions, and
distances between an empirical spectrum and a reference law.

The eigensolver delegates to LAPACK's symmetric driver (tridiagonalization
plus implicit-shift iteration under the hood) and every solve is validated
against the trace identity. The Kolmogorov-Smirnov distance is evaluated
exactly over the jump points of both distributions, never on a grid.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NumericError, ParameterError
from .lsd import LawModel, law_cdf, law_mass_at

__all__ = [
    "SpectralSample",
    "HistogramResult",
    "eigenvalues_sym",
    "affine_spectrum",
    "ks_distance",
    "ks_two_sample",
    "empirical_stieltjes",
    "companion_check",
    "histogram",
]


@dataclass(frozen=True)
class SpectralSample:
    """Sorted eigenvalues plus the (p, n) geometry they came from."""

    eigs: np.ndarray
    n: int | None = None

    def __post_init__(self):
        eigs = np.asarray(self.eigs, dtype=np.float64)
        if not np.all(np.isfinite(eigs)):
            raise NumericError("spectrum contains non-finite values")
        object.__setattr__(self, "eigs", np.sort(eigs))
        self.eigs.setflags(write=False)

    @property
    def p(self) -> int:
        return self.eigs.size

    @property
    def gamma_p(self) -> float | None:
        return self.p / self.n if self.n else None


def _as_square(a) -> np.ndarray:
    m = np.asarray(getattr(a, "entries", a), dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ParameterError("expected a square matrix")
    return m


def eigenvalues_sym(a, n: int | None = None) -> SpectralSample:
    """All eigenvalues of a symmetric matrix, ascending, trace-validated."""
    m = _as_square(a)
    if not np.all(np.isfinite(m)):
        raise NumericError("matrix has non-finite entries")
    if np.abs(m - m.T).max(initial=0.0) > 1e-12:
        raise ParameterError("matrix is not symmetric within 1e-12")
    s = 0.5 * (m + m.T)
    eigs = np.linalg.eigvalsh(s)
    scale = max(1.0, float(np.abs(s).max(initial=0.0)))
    resid = abs(float(eigs.sum()) - float(np.trace(s)))
    if resid > 1e-8 * s.shape[0] * scale:
        raise NumericError(f"eigenvalue/trace mismatch {resid:.3e}")
    return SpectralSample(eigs=eigs, n=n)


def affine_spectrum(s: SpectralSample, a: float, b: float) -> SpectralSample:
    """Spectrum of a*A + b*I, realized directly on the eigenvalues."""
    return SpectralSample(eigs=a * s.eigs + b, n=s.n)


def _model_atom(model: LawModel) -> tuple[float, float] | None:
    if model.base == "mp" and model.gamma > 1.0:
        return model.shift, law_mass_at(model, model.shift)
    return None


def ks_distance(s: SpectralSample, model: LawModel) -> float:
    """sup_x |F_spectrum(x) - F_model(x)|, exact over all jump points."""
    lam = s.eigs
    p = lam.size
    points = np.unique(lam)
    ecdf_hi = np.searchsorted(lam, points, side="right") / p
    ecdf_lo = np.searchsorted(lam, points, side="left") / p
    d = 0.0
    for x, eh, el in zip(points, ecdf_hi, ecdf_lo):
        f = law_cdf(model, float(x))
        f_minus = f - law_mass_at(model, float(x))
        d = max(d, abs(eh - f), abs(el - f_minus))
    atom = _model_atom(model)
    if atom is not None:
        x, mass = atom
        f = law_cdf(model, x)
        eh = np.searchsorted(lam, x, side="right") / p
        el = np.searchsorted(lam, x, side="left") / p
        d = max(d, abs(eh - f), abs(el - (f - mass)))
    return float(d)


def ks_two_sample(s1: SpectralSample, s2: SpectralSample) -> float:
    """Exact two-sample Kolmogorov-Smirnov statistic between two spectra."""
    xs = np.concatenate([s1.eigs, s2.eigs])
    f1 = np.searchsorted(s1.eigs, xs, side="right") / s1.p
    f2 = np.searchsorted(s2.eigs, xs, side="right") / s2.p
    return float(np.abs(f1 - f2).max())


def empirical_stieltjes(s: SpectralSample, z: complex) -> complex:
    """(1/p) sum_i 1/(lambda_i - z) for Im z > 0."""
    z = complex(z)
    if not z.imag > 0.0:
        raise DomainError("empirical Stieltjes transform requires Im z > 0")
    return complex(np.mean(1.0 / (s.eigs - z)))


def companion_check(y) -> float:
    """Largest gap between the nonzero spectra of Y Y' (p x p) and Y' Y (n x n).

    Both Gram matrices carry the same nonzero eigenvalues with the same
    multiplicities; only small instances should be pushed through the n x n
    solve.
    """
    rows = np.asarray(getattr(y, "rows", y), dtype=np.float64)
    p, n = rows.shape
    if p > n:
        raise ParameterError(f"need p <= n, got p={p}, n={n}")
    small = np.linalg.eigvalsh(rows @ rows.T)
    big = np.linalg.eigvalsh(rows.T @ rows)
    return float(np.abs(small - big[n - p:]).max())


@dataclass(frozen=True)
class HistogramResult:
    bin_left: np.ndarray
    bin_right: np.ndarray
    counts: np.ndarray
    density: np.ndarray

    @property
    def bins(self) -> int:
        return self.counts.size


def histogram(s: SpectralSample, lo: float, hi: float, bins: int) -> HistogramResult:
    """Equal-width histogram normalized so sum(density * width) equals the
    fraction of eigenvalues that fall inside [lo, hi]."""
    if bins < 1:
        raise ParameterError(f"need bins >= 1, got {bins}")
    if not hi > lo:
        raise ParameterError(f"need hi > lo, got [{lo}, {hi}]")
    counts, edges = np.histogram(s.eigs, bins=bins, range=(lo, hi))
    width = (hi - lo) / bins
    density = counts / (s.p * width)
    return HistogramResult(
        bin_left=edges[:-1], bin_right=edges[1:], counts=counts, density=density
    )

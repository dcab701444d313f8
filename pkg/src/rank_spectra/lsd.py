"""Closed-form limiting spectral laws and their transforms.

Two base laws are supported, each optionally composed with an affine map
x -> scale*x + shift:

* the semicircle law, density sqrt(4 - x^2) / (2 pi) on [-2, 2];
* the Marchenko-Pastur law with ratio parameter gamma > 0, density
  sqrt((b - x)(x - a)) / (2 pi gamma x) on [a, b] with a = (1 - sqrt(gamma))^2,
  b = (1 + sqrt(gamma))^2, plus a point mass of 1 - 1/gamma at 0 when gamma > 1.

CDFs are exact for the semicircle and computed by adaptive Simpson
quadrature for Marchenko-Pastur, after the substitution
x = a + (b - a) sin^2(theta) which removes the square-root edge
singularities. Stieltjes transforms use explicit branch selection: of the
two square roots, the one making Im s(z) > 0 is kept.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NumericError, ParameterError

__all__ = [
    "LawModel",
    "semicircle_density",
    "mp_density",
    "mp_support",
    "mp_atom",
    "law_density",
    "law_cdf",
    "law_mass_at",
    "law_support",
    "law_quantile",
    "stieltjes",
    "mp_to_semicircle_residual",
]

_QUAD_TOL = 1e-9


@dataclass(frozen=True)
class LawModel:
    """A base law ('semicircle' or 'mp') pushed through x -> scale*x + shift."""

    base: str
    gamma: float | None = None
    scale: float = 1.0
    shift: float = 0.0

    def __post_init__(self):
        if self.base not in ("semicircle", "mp"):
            raise ParameterError(f"unknown base law {self.base!r}")
        if self.base == "mp" and (self.gamma is None or not self.gamma > 0.0):
            raise ParameterError(f"mp law needs gamma > 0, got {self.gamma!r}")
        if self.scale == 0.0 or not math.isfinite(self.scale) or not math.isfinite(self.shift):
            raise ParameterError("affine scale must be nonzero and finite")

    @classmethod
    def semicircle(cls, scale: float = 1.0, shift: float = 0.0) -> "LawModel":
        return cls(base="semicircle", scale=scale, shift=shift)

    @classmethod
    def marchenko_pastur(cls, gamma: float, scale: float = 1.0, shift: float = 0.0) -> "LawModel":
        return cls(base="mp", gamma=gamma, scale=scale, shift=shift)

    def label(self) -> str:
        core = "semicircle" if self.base == "semicircle" else f"mp(gamma={self.gamma:g})"
        if self.scale == 1.0 and self.shift == 0.0:
            return core
        return f"{self.scale:g}*{core}{self.shift:+g}"


def semicircle_density(x):
    x = np.asarray(x, dtype=np.float64)
    inside = np.abs(x) < 2.0
    out = np.where(inside, np.sqrt(np.maximum(4.0 - x * x, 0.0)) / (2.0 * np.pi), 0.0)
    return out if out.ndim else float(out)


def mp_support(gamma: float) -> tuple[float, float]:
    r = math.sqrt(gamma)
    return (1.0 - r) ** 2, (1.0 + r) ** 2


def mp_atom(gamma: float) -> float:
    """Mass of the point at 0 (nonzero only for gamma > 1)."""
    return max(0.0, 1.0 - 1.0 / gamma)


def mp_density(gamma: float, x):
    """Density of the absolutely continuous part only."""
    if not gamma > 0.0:
        raise ParameterError(f"gamma must be positive, got {gamma!r}")
    a, b = mp_support(gamma)
    x = np.asarray(x, dtype=np.float64)
    inside = (x > a) & (x < b)
    safe = np.where(inside, x, 1.0)
    out = np.where(
        inside, np.sqrt(np.maximum((b - safe) * (safe - a), 0.0)) / (2.0 * np.pi * safe * gamma), 0.0
    )
    return out if out.ndim else float(out)


def _adaptive_simpson(f, a, b, tol):
    fa, fb = f(a), f(b)
    m = 0.5 * (a + b)
    fm = f(m)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)

    def recurse(a, b, fa, fm, fb, whole, tol, depth):
        m = 0.5 * (a + b)
        lm, rm = 0.5 * (a + m), 0.5 * (m + b)
        flm, frm = f(lm), f(rm)
        left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
        right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
        if depth >= 50 or abs(left + right - whole) <= 15.0 * tol:
            return left + right + (left + right - whole) / 15.0
        half = 0.5 * tol
        return recurse(a, m, fa, flm, fm, left, half, depth + 1) + recurse(
            m, b, fm, frm, fb, right, half, depth + 1
        )

    return recurse(a, b, fa, fm, fb, whole, tol, 0)


def _mp_cdf_continuous(gamma: float, x: float) -> float:
    """Integral of the continuous density from the lower edge up to x."""
    a, b = mp_support(gamma)
    if x <= a:
        return 0.0
    w = b - a
    theta_x = math.pi / 2 if x >= b else math.asin(math.sqrt(min(1.0, (x - a) / w)))
    if a == 0.0:
        # gamma == 1: the sin^2 factor cancels against the 1/x pole
        def integrand(t):
            c = math.cos(t)
            return w * c * c / (math.pi * gamma)
    else:
        def integrand(t):
            s2 = math.sin(2.0 * t)
            return w * w * s2 * s2 / (4.0 * math.pi * gamma * (a + w * math.sin(t) ** 2))

    return _adaptive_simpson(integrand, 0.0, theta_x, _QUAD_TOL)


def _semicircle_cdf(x: float) -> float:
    if x <= -2.0:
        return 0.0
    if x >= 2.0:
        return 1.0
    return 0.5 + x * math.sqrt(4.0 - x * x) / (4.0 * math.pi) + math.asin(0.5 * x) / math.pi


def _base_cdf(model: LawModel, w: float) -> float:
    if model.base == "semicircle":
        return _semicircle_cdf(w)
    atom = mp_atom(model.gamma)
    if w < 0.0:
        return 0.0
    return min(1.0, atom + _mp_cdf_continuous(model.gamma, w))


def _base_mass_at(model: LawModel, w: float) -> float:
    if model.base == "mp" and model.gamma > 1.0 and w == 0.0:
        return mp_atom(model.gamma)
    return 0.0


def law_mass_at(model: LawModel, x: float) -> float:
    """Point mass of the transformed law at x (0 except at a transformed atom)."""
    return _base_mass_at(model, (x - model.shift) / model.scale)


def law_cdf(model: LawModel, x: float) -> float:
    """Right-continuous CDF of the transformed law, atoms included."""
    w = (x - model.shift) / model.scale
    if model.scale > 0.0:
        return _base_cdf(model, w)
    return 1.0 - _base_cdf(model, w) + _base_mass_at(model, w)


def law_density(model: LawModel, x):
    """Density of the continuous part of the transformed law."""
    x = np.asarray(x, dtype=np.float64)
    w = (x - model.shift) / model.scale
    if model.base == "semicircle":
        base = semicircle_density(w)
    else:
        base = mp_density(model.gamma, w)
    out = np.asarray(base) / abs(model.scale)
    return out if out.ndim else float(out)


def law_support(model: LawModel) -> tuple[float, float]:
    """Smallest interval carrying all mass of the transformed law (atom included)."""
    if model.base == "semicircle":
        lo, hi = -2.0, 2.0
    else:
        a, b = mp_support(model.gamma)
        lo = 0.0 if model.gamma > 1.0 else a
        hi = b
    ends = sorted((model.scale * lo + model.shift, model.scale * hi + model.shift))
    return ends[0], ends[1]


def law_quantile(model: LawModel, q: float) -> float:
    """Generalized inverse CDF inf{x : F(x) >= q}, bisected to 1e-9.

    Over the flat span created by an atom, the atom's location is returned.
    """
    if not 0.0 < q < 1.0:
        raise DomainError("quantile level must lie strictly inside (0,1)")
    lo, hi = law_support(model)
    lo, hi = lo - 1.0, hi + 1.0
    while hi - lo > 1e-9:
        mid = 0.5 * (lo + hi)
        if law_cdf(model, mid) >= q:
            hi = mid
        else:
            lo = mid
    return hi


def _pick_branch(c1: complex, c2: complex) -> complex:
    if c1.imag > 0.0:
        return c1
    if c2.imag > 0.0:
        return c2
    raise NumericError("no square-root branch with positive imaginary part")


def _base_stieltjes(model: LawModel, z: complex) -> complex:
    if model.base == "semicircle":
        r = cmath.sqrt(z * z - 4.0)
        return _pick_branch(0.5 * (r - z), 0.5 * (-r - z))
    g = model.gamma
    aa = 1.0 - g - z
    r = cmath.sqrt(aa * aa - 4.0 * g * z)
    den = 2.0 * g * z
    return _pick_branch((aa + r) / den, (aa - r) / den)


def stieltjes(model: LawModel, z: complex) -> complex:
    """Stieltjes transform s(z) = int dF(x)/(x - z) for Im z > 0."""
    z = complex(z)
    if not z.imag > 0.0:
        raise DomainError("stieltjes transform requires Im z > 0")
    w = (z - model.shift) / model.scale
    if model.scale > 0.0:
        return _base_stieltjes(model, w) / model.scale
    # w lies in the lower half-plane; use s(conj w) = conj(s(w))
    return _base_stieltjes(model, w.conjugate()).conjugate() / model.scale


def mp_to_semicircle_residual(gamma: float) -> float:
    """Sup-distance on a 512-point grid over [-2.5, 2.5] between the CDF of the
    centered/rescaled Marchenko-Pastur law (gamma^{-1/2} * (W - 1)) and the
    semicircle CDF. Shrinks as gamma decreases toward 0.
    """
    if not 0.0 < gamma <= 1.0:
        raise ParameterError(f"gamma must lie in (0, 1], got {gamma!r}")
    r = 1.0 / math.sqrt(gamma)
    model = LawModel.marchenko_pastur(gamma, scale=r, shift=-r)
    grid = np.linspace(-2.5, 2.5, 512)
    return max(abs(law_cdf(model, x) - _semicircle_cdf(x)) for x in grid)

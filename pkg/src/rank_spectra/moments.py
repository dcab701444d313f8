"""Moment conditions and scaling constants for unit-sphere row matrices.

The two conditions controlling the limiting spectra of Gram matrices with
unit-sphere rows are

    c4      = (n^2 / p^2)     * sum_i E[Y_i1^4]        -> 0
    c_cross = (n^2 / p^{3/2}) * sum_i |E[Y_i1 Y_i2]|   -> 0

and both are estimated here by Monte Carlo over independent row draws,
reading off only the first one or two coordinates (valid because the rows
are exchangeable within themselves).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .datagen import DataMatrix, DistributionSpec, RowPattern, sample_matrix
from .errors import ParameterError

__all__ = [
    "MomentReport",
    "estimate_conditions",
    "bernoulli_variance_factor",
    "variance_factor",
    "finite_support_variance_factor",
    "regvar_condition",
    "pareto_truncated_fourth_moment",
]


@dataclass(frozen=True)
class MomentReport:
    c4: float
    c_cross: float
    reps: int
    stderr4: float
    stderr_cross: float


def estimate_conditions(
    builder: Callable[[DataMatrix], "object"],
    pattern: RowPattern,
    p: int,
    n: int,
    reps: int,
    seed: int,
) -> MomentReport:
    """Monte Carlo estimate of the two unit-sphere moment conditions.

    ``builder`` maps a data matrix to its unit-sphere row matrix (rank rows,
    correlation rows, ...). ``reps`` independent copies of the p-row pattern
    are drawn in one batch; standard errors are per-row sample standard
    deviations propagated through the sums.
    """
    if reps < 2:
        raise ParameterError(f"need reps >= 2, got {reps}")
    x = sample_matrix(pattern.expanded(p), p * reps, n, seed)
    y = builder(x)
    rows = np.asarray(getattr(y, "rows", y), dtype=np.float64)
    y1 = rows[:, 0].reshape(reps, p)
    y2 = rows[:, 1].reshape(reps, p)

    w4 = y1**4
    cross = y1 * y2
    scale4 = n * n / p**2
    scale_cross = n * n / p**1.5
    c4 = scale4 * float(w4.mean(axis=0).sum())
    c_cross = scale_cross * float(np.abs(cross.mean(axis=0)).sum())
    stderr4 = scale4 * math.sqrt(float(w4.var(axis=0, ddof=1).sum()) / reps)
    stderr_cross = scale_cross * math.sqrt(float(cross.var(axis=0, ddof=1).sum()) / reps)
    return MomentReport(
        c4=c4, c_cross=c_cross, reps=reps, stderr4=stderr4, stderr_cross=stderr_cross
    )


def bernoulli_variance_factor(m: float) -> float:
    """Limit of the tie-adjustment diagonal for i.i.d. Bernoulli(m) rows."""
    if not 0.0 < m < 1.0:
        raise ParameterError(f"need m in (0,1), got {m!r}")
    return 3.0 * m * (1.0 - m)


def finite_support_variance_factor(values, probs) -> float:
    """3 * Var(2 H(X) - q(X)) for a finitely supported X, by direct summation."""
    values = np.asarray(values, dtype=np.float64)
    probs = np.asarray(probs, dtype=np.float64)
    if probs.min() < 0.0 or abs(probs.sum() - 1.0) > 1e-12:
        raise ParameterError("probabilities must be nonnegative and sum to 1")
    order = np.argsort(values)
    v, q = values[order], probs[order]
    h = np.cumsum(q)
    w = 2.0 * h - q
    mean = float(np.sum(q * w))
    var = float(np.sum(q * w * w)) - mean * mean
    return 3.0 * var


def variance_factor(spec: DistributionSpec) -> float:
    """3 * Var(2 H(X) - q(X)): exactly 1 for continuous X, 3m(1-m) for Bernoulli(m)."""
    if spec.is_continuous:
        return 1.0
    if spec.kind == "bernoulli":
        return bernoulli_variance_factor(spec.m)
    # constant: H = q = 1 on the support point, so the variance vanishes
    return 0.0


def regvar_condition(alpha: float, delta: float) -> bool:
    """Whether a regularly varying tail of index alpha is light enough when
    the sample size grows like p**delta."""
    if not 2.0 <= alpha < 4.0:
        raise ParameterError(f"need tail index in [2,4), got {alpha!r}")
    if not delta >= 1.0:
        raise ParameterError(f"need growth exponent >= 1, got {delta!r}")
    return alpha > 4.0 - 2.0 / delta


def pareto_truncated_fourth_moment(alpha: float, n: float) -> float:
    """int_0^n x P(X^2 > x) dx for X Pareto(alpha) on [1, inf).

    P(X^2 > x) = min(1, x^{-alpha/2}), so the integral is
    1/2 + (n^{2 - alpha/2} - 1) / (2 - alpha/2) once n >= 1.
    """
    if alpha == 4.0:
        raise ParameterError("alpha = 4 hits the logarithmic case")
    if not alpha > 0.0:
        raise ParameterError(f"need alpha > 0, got {alpha!r}")
    if n <= 1.0:
        return 0.5 * float(n) ** 2 if n < 1.0 else 0.5
    e = 2.0 - alpha / 2.0
    return 0.5 + (float(n) ** e - 1.0) / e

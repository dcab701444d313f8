"""Dependency matrices: Spearman rank correlation, Kendall's tau, the
tie-adjusted Kendall matrix, and (centered) sample correlation.

All builders return a SymmetricMatrix whose upper triangle is computed once
and mirrored. The tie-adjustment is applied as row/column scaling rather than
an explicit matrix product.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kendall
from .errors import DegenerateRowError, ZeroScalingError
from .ranks import RankMatrix, kendall_scaling, rank_rows, spearman_rows

__all__ = [
    "SphereMatrix",
    "SymmetricMatrix",
    "gram",
    "spearman",
    "kendall_tau",
    "kendall_T",
    "correlation_rows",
    "sample_correlation",
    "offdiag",
]

_SYM_TOL = 1e-12


@dataclass(frozen=True)
class SphereMatrix:
    """p x n matrix whose rows sit on the Euclidean unit sphere."""

    rows: np.ndarray

    def __post_init__(self):
        norms = np.sqrt(np.einsum("ij,ij->i", self.rows, self.rows))
        err = np.abs(norms - 1.0).max() if norms.size else 0.0
        if err > _SYM_TOL:
            raise ValueError(f"rows are not unit vectors (max |norm-1| = {err:.3e})")
        self.rows.setflags(write=False)

    @property
    def p(self) -> int:
        return self.rows.shape[0]

    @property
    def n(self) -> int:
        return self.rows.shape[1]


@dataclass(frozen=True)
class SymmetricMatrix:
    entries: np.ndarray

    def __post_init__(self):
        a = self.entries
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("expected a square matrix")
        asym = np.abs(a - a.T).max() if a.size else 0.0
        if asym > _SYM_TOL:
            raise ValueError(f"matrix not symmetric (max |A - A'| = {asym:.3e})")
        a.setflags(write=False)

    @property
    def p(self) -> int:
        return self.entries.shape[0]


def _mirror_upper(a: np.ndarray) -> np.ndarray:
    up = np.triu(a)
    return up + np.triu(a, 1).T


def offdiag(m: SymmetricMatrix) -> SymmetricMatrix:
    out = m.entries.copy()
    np.fill_diagonal(out, 0.0)
    return SymmetricMatrix(entries=out)


def gram(y: SphereMatrix) -> SymmetricMatrix:
    """Y Y' for unit-sphere rows; diagonal entries equal 1 up to rounding."""
    a = y.rows @ y.rows.T
    return SymmetricMatrix(entries=_mirror_upper(a))


def spearman(rk: RankMatrix) -> SymmetricMatrix:
    """Rank correlation matrix: the Gram matrix of the unit-norm centered rank rows."""
    return gram(spearman_rows(rk))


def _entries(x) -> np.ndarray:
    return np.asarray(getattr(x, "entries", x), dtype=np.float64)


def kendall_tau(x) -> SymmetricMatrix:
    """Pairwise concordance matrix, entries (C - D) / (n(n-1)/2).

    The diagonal is computed like any other entry: it equals 1 minus the tied
    share of pairs in that row, and is NOT forced to 1.
    """
    xe = _entries(x)
    p, n = xe.shape
    if n < 2:
        raise ValueError("kendall_tau needs n >= 2")
    cd, _ = _kendall.concordance_matrix(np.ascontiguousarray(xe))
    n0 = n * (n - 1) // 2
    return SymmetricMatrix(entries=cd.astype(np.float64) / n0)


def kendall_T(x) -> SymmetricMatrix:
    """Tie-adjusted Kendall matrix: scale off-diagonal tau by d_i^{-1/2} d_j^{-1/2}."""
    xe = _entries(x)
    tau = kendall_tau(xe)
    d = kendall_scaling(rank_rows(xe)).d
    bad = np.flatnonzero(d == 0.0)
    if bad.size:
        raise ZeroScalingError(bad.tolist())
    inv = 1.0 / np.sqrt(d)
    t = tau.entries * inv[:, None] * inv[None, :]
    np.fill_diagonal(t, 0.0)
    return SymmetricMatrix(entries=t)


def correlation_rows(x, centered: bool = False) -> SphereMatrix:
    """Rows normalized to unit Euclidean norm, optionally after centering by the row mean."""
    xe = _entries(x).copy()
    constant = np.flatnonzero(xe.max(axis=1) == xe.min(axis=1))
    if centered:
        if constant.size:
            raise DegenerateRowError(
                constant.tolist(), f"centered row(s) {constant.tolist()} are identically zero"
            )
        xe -= xe.mean(axis=1)[:, None]
    norms = np.sqrt(np.einsum("ij,ij->i", xe, xe))
    zero = np.flatnonzero(norms == 0.0)
    if zero.size:
        raise DegenerateRowError(zero.tolist(), f"row(s) {zero.tolist()} have zero norm")
    return SphereMatrix(rows=xe / norms[:, None])


def sample_correlation(x, centered: bool = False) -> SymmetricMatrix:
    return gram(correlation_rows(x, centered=centered))

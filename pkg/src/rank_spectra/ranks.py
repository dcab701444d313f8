"""Fractional (mid-)ranks with ties, row-normalized rank rows, and tie diagnostics.

A value's fractional rank is  #{t : x_t <= x_j} - (1/2) #{t != j : x_t = x_j},
i.e. tied observations share the average of the positions they occupy.
Every row of ranks sums to n(n+1)/2 exactly, ties or not, and since ranks are
multiples of 1/2 the identity holds exactly in floating point as well.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateRowError

__all__ = [
    "RankMatrix",
    "ScalingDiag",
    "fractional_ranks",
    "rank_rows",
    "spearman_rows",
    "kendall_scaling",
    "degeneracy_diagnostic",
]


@dataclass(frozen=True)
class RankMatrix:
    p: int
    n: int
    q: np.ndarray  # p x n fractional ranks, each a multiple of 0.5 in [1, n]


@dataclass(frozen=True)
class ScalingDiag:
    """Diagonal of the tie-adjustment matrix used to rescale Kendall's tau."""

    d: np.ndarray  # length p, entries in [0, 3)


def fractional_ranks(row: np.ndarray) -> np.ndarray:
    """Mid-ranks of one row, computed by sort-then-scan over tie blocks."""
    row = np.asarray(row, dtype=np.float64)
    n = row.size
    order = np.argsort(row, kind="stable")
    svals = row[order]
    # block id of each sorted position; a block is a maximal run of equal values
    starts = np.empty(n, dtype=bool)
    starts[0] = True
    starts[1:] = svals[1:] != svals[:-1]
    block = np.cumsum(starts) - 1
    counts = np.bincount(block)
    first_pos = np.concatenate(([0], np.cumsum(counts)[:-1]))
    # average of 1-based positions first+1 .. first+count
    mid = first_pos + (counts + 1.0) / 2.0
    ranks = np.empty(n, dtype=np.float64)
    ranks[order] = mid[block]
    return ranks


def rank_rows(x) -> RankMatrix:
    """Fractional ranks of every row of a data matrix (DataMatrix or array)."""
    entries = np.asarray(getattr(x, "entries", x), dtype=np.float64)
    p, n = entries.shape
    q = np.empty((p, n), dtype=np.float64)
    for i in range(p):
        q[i] = fractional_ranks(entries[i])
    return RankMatrix(p=p, n=n, q=q)


def _centered_ranks(rk: RankMatrix) -> tuple[np.ndarray, np.ndarray]:
    m = rk.q - (rk.n + 1) / 2.0
    return m, np.einsum("ij,ij->i", m, m)


def spearman_rows(rk: RankMatrix):
    """Rows of centered ranks scaled to unit Euclidean norm.

    Raises DegenerateRowError (with the offending row indices) if some row is
    fully tied, since its centered ranks are identically zero.
    """
    from .depmat import SphereMatrix

    m, ss = _centered_ranks(rk)
    bad = np.flatnonzero(ss == 0.0)
    if bad.size:
        raise DegenerateRowError(bad.tolist(), f"all values tied in row(s) {bad.tolist()}")
    return SphereMatrix(rows=m / np.sqrt(ss)[:, None])


def kendall_scaling(rk: RankMatrix) -> ScalingDiag:
    """Tie-adjustment diagonal d_i = (12/n^3) sum_s (q_is - (n+1)/2)^2.

    A fully tied row yields d_i = 0; rejection happens downstream where the
    inverse square root is actually needed.
    """
    _, ss = _centered_ranks(rk)
    return ScalingDiag(d=12.0 * ss / float(rk.n) ** 3)


def degeneracy_diagnostic(row: np.ndarray) -> float:
    """Largest empirical point mass of the row, in [1/n, 1]; 1.0 means fully tied."""
    row = np.asarray(row, dtype=np.float64)
    _, counts = np.unique(row, return_counts=True)
    return counts.max() / row.size

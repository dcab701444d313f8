"""Fast concordance kernel for Kendall's tau over all row pairs.

For each pair of rows the concordant-minus-discordant count is obtained by
lexicographically sorting the second row inside the tie blocks of the first
and counting exchanges with a bottom-up merge sort (Knight-style), so a pair
costs O(n log n) instead of the O(n^2) of the sign double sum. The double-sum
definition lives in ``concordance_bruteforce`` and is kept as the test oracle.
"""

from __future__ import annotations

import numpy as np
from numba import njit, prange


@njit(cache=True)
def _tied_pairs(sorted_vals):
    n = sorted_vals.shape[0]
    total = 0
    run = 1
    for k in range(1, n):
        if sorted_vals[k] == sorted_vals[k - 1]:
            run += 1
        else:
            total += run * (run - 1) // 2
            run = 1
    total += run * (run - 1) // 2
    return total


@njit(cache=True)
def _merge_count(y, buf):
    # counts pairs (earlier, later) with y_earlier > y_later, sorting y in place
    n = y.shape[0]
    swaps = 0
    width = 1
    while width < n:
        lo = 0
        while lo < n - width:
            mid = lo + width
            hi = min(lo + 2 * width, n)
            i, j, k = lo, mid, lo
            while i < mid and j < hi:
                if y[i] <= y[j]:
                    buf[k] = y[i]
                    i += 1
                else:
                    buf[k] = y[j]
                    swaps += mid - i
                    j += 1
                k += 1
            while i < mid:
                buf[k] = y[i]
                i += 1
                k += 1
            while j < hi:
                buf[k] = y[j]
                j += 1
                k += 1
            for t in range(lo, hi):
                y[t] = buf[t]
            lo += 2 * width
        width *= 2
    return swaps


@njit(cache=True)
def _pair_concordance(xi_sorted, y, buf, ties_i, ties_j, n0):
    # y must already be permuted into the sort order of row i
    n = y.shape[0]
    joint = 0
    pos = 0
    while pos < n:
        end = pos + 1
        while end < n and xi_sorted[end] == xi_sorted[pos]:
            end += 1
        if end - pos > 1:
            sub = y[pos:end]
            sub.sort()
            joint += _tied_pairs(sub)
        pos = end
    swaps = _merge_count(y, buf)
    return n0 - ties_i - ties_j + joint - 2 * swaps


@njit(parallel=True, cache=True)
def concordance_matrix(x):
    """All-pairs concordant-minus-discordant counts and per-row tied-pair counts."""
    p, n = x.shape
    n0 = n * (n - 1) // 2
    order = np.empty((p, n), dtype=np.int64)
    xs = np.empty((p, n), dtype=np.float64)
    ties = np.empty(p, dtype=np.int64)
    for i in range(p):
        o = np.argsort(x[i])
        order[i] = o
        for k in range(n):
            xs[i, k] = x[i, o[k]]
        ties[i] = _tied_pairs(xs[i])
    cd = np.zeros((p, p), dtype=np.int64)
    for i in prange(p):
        y = np.empty(n, dtype=np.float64)
        buf = np.empty(n, dtype=np.float64)
        for j in range(i + 1, p):
            for k in range(n):
                y[k] = x[j, order[i, k]]
            c = _pair_concordance(xs[i], y, buf, ties[i], ties[j], n0)
            cd[i, j] = c
            cd[j, i] = c
    for i in range(p):
        cd[i, i] = n0 - ties[i]
    return cd, ties


def concordance_bruteforce(x_row: np.ndarray, y_row: np.ndarray) -> int:
    """O(n^2) sign double sum; the definition the fast kernel is checked against."""
    sx = np.sign(x_row[:, None] - x_row[None, :])
    sy = np.sign(y_row[:, None] - y_row[None, :])
    return int(round(float(np.sum(sx * sy)))) // 2

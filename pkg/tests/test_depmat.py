"""Dependency-matrix builders and their oracles."""

import numpy as np
import pytest

import rank_spectra as rs
from rank_spectra._kendall import concordance_bruteforce, concordance_matrix
from rank_spectra.errors import DegenerateRowError, ZeroScalingError


def kendall_tau_double_sum(x):
    """O(n^2) sign double sum over all row pairs: the defining oracle."""
    p, n = x.shape
    out = np.empty((p, p))
    for i in range(p):
        for j in range(p):
            out[i, j] = concordance_bruteforce(x[i], x[j]) / (n * (n - 1) / 2)
    return out


def unit_rows(a):
    return rs.SphereMatrix(rows=a / np.linalg.norm(a, axis=1, keepdims=True))


def test_gram_trivial_cases():
    one = rs.gram(rs.SphereMatrix(rows=np.array([[0.6, 0.8]])))
    assert np.array_equal(one.entries, [[1.0]])

    same = rs.gram(rs.SphereMatrix(rows=np.array([[0.6, 0.8], [0.6, 0.8]])))
    assert same.entries[0, 1] == pytest.approx(1.0, abs=1e-15)

    orth = rs.gram(rs.SphereMatrix(rows=np.array([[1.0, 0.0], [0.0, 1.0]])))
    assert orth.entries[0, 1] == 0.0


def test_gram_diag_and_psd():
    rng = np.random.default_rng(11)
    y = unit_rows(rng.normal(size=(15, 40)))
    g = rs.gram(y)
    assert np.abs(np.diag(g.entries) - 1.0).max() < 1e-12
    assert np.linalg.eigvalsh(g.entries).min() >= -1e-8 * 15


def test_spearman_hand_values():
    r = rs.spearman(rs.rank_rows(np.array([[1.0, 2.0, 3.0], [3.0, 1.0, 2.0]])))
    assert r.entries[0, 1] == pytest.approx(-0.5, abs=1e-15)

    same = rs.spearman(rs.rank_rows(np.array([[1.0, 5.0, 9.0], [2.0, 4.0, 8.0]])))
    assert same.entries[0, 1] == pytest.approx(1.0, abs=1e-15)

    rev = rs.spearman(rs.rank_rows(np.array([[1.0, 2.0, 3.0], [3.0, 2.0, 1.0]])))
    assert rev.entries[0, 1] == pytest.approx(-1.0, abs=1e-15)


def test_spearman_bounds_and_diag():
    rng = np.random.default_rng(12)
    x = rng.integers(0, 3, size=(12, 60)).astype(float)
    r = rs.spearman(rs.rank_rows(x))
    assert np.abs(np.diag(r.entries) - 1.0).max() < 1e-12
    assert np.abs(r.entries).max() <= 1.0 + 1e-12


def test_spearman_propagates_degenerate_row():
    with pytest.raises(DegenerateRowError):
        rs.spearman(rs.rank_rows(np.array([[1.0, 1.0], [1.0, 2.0]])))


def test_kendall_tau_hand_values():
    t = rs.kendall_tau(np.array([[1.0, 2.0, 3.0], [1.0, 2.0, 3.0]]))
    assert t.entries[0, 1] == 1.0
    t = rs.kendall_tau(np.array([[1.0, 2.0, 3.0], [3.0, 2.0, 1.0]]))
    assert t.entries[0, 1] == -1.0
    # one tied pair in the first row contributes zero
    t = rs.kendall_tau(np.array([[1.0, 1.0, 2.0], [1.0, 2.0, 3.0]]))
    assert t.entries[0, 1] == pytest.approx(2.0 / 3.0, abs=1e-15)


def test_kendall_tau_diagonal_is_tie_deficit():
    x = np.array([[1.0, 1.0, 2.0, 3.0]])
    t = rs.kendall_tau(x)
    # 6 pairs, 1 tied: diagonal is 5/6, not forced to 1
    assert t.entries[0, 0] == pytest.approx(5.0 / 6.0, abs=1e-15)


def test_kendall_fast_kernel_vs_double_sum():
    rng = np.random.default_rng(13)
    for trial in range(200):
        p = int(rng.integers(2, 5))
        n = int(rng.integers(2, 13))
        alphabet = int(rng.integers(2, 6))
        x = rng.integers(0, alphabet, size=(p, n)).astype(float)
        fast = rs.kendall_tau(x).entries
        slow = kendall_tau_double_sum(x)
        assert np.abs(fast - slow).max() <= 1e-12


def test_kendall_kernel_continuous_data():
    rng = np.random.default_rng(14)
    x = rng.normal(size=(4, 11))
    assert np.abs(rs.kendall_tau(x).entries - kendall_tau_double_sum(x)).max() <= 1e-12


def test_kendall_kernel_tie_counts():
    x = np.array([[1.0, 1.0, 2.0, 2.0, 2.0], [0.0, 1.0, 2.0, 3.0, 4.0]])
    _, ties = concordance_matrix(x)
    assert ties.tolist() == [1 + 3, 0]


def test_kendall_T_diag_zero_and_identity():
    rng = np.random.default_rng(15)
    x = rng.integers(0, 3, size=(6, 30)).astype(float)
    t = rs.kendall_T(x)
    assert np.all(np.diag(t.entries) == 0.0)
    # offdiag identity, recomposed from the two public pieces
    d = rs.kendall_scaling(rs.rank_rows(x)).d
    tau = rs.kendall_tau(x).entries.copy()
    np.fill_diagonal(tau, 0.0)
    inv = 1.0 / np.sqrt(d)
    assert np.abs(t.entries - tau * np.outer(inv, inv)).max() <= 1e-12


def test_kendall_T_against_sign_outer_product_definition():
    # direct sum over column pairs of offdiag(sign(q_s - q_t) sign(q_s - q_t)')
    rng = np.random.default_rng(16)
    x = rng.integers(0, 3, size=(4, 10)).astype(float)
    p, n = x.shape
    q = rs.rank_rows(x).q
    acc = np.zeros((p, p))
    for s in range(n):
        for t in range(s + 1, n):
            v = np.sign(q[:, s] - q[:, t])
            outer = np.outer(v, v)
            np.fill_diagonal(outer, 0.0)
            acc += outer
    m = acc * 2.0 / (n * (n - 1))
    d = rs.kendall_scaling(rs.rank_rows(x)).d
    inv = 1.0 / np.sqrt(d)
    expected = m * np.outer(inv, inv)
    assert np.abs(rs.kendall_T(x).entries - expected).max() <= 1e-12


def test_kendall_T_continuous_scaling():
    rng = np.random.default_rng(17)
    x = rng.normal(size=(5, 40))
    n = 40
    t = rs.kendall_T(x)
    tau = rs.kendall_tau(x).entries.copy()
    np.fill_diagonal(tau, 0.0)
    assert np.abs(t.entries - tau * (n * n / (n * n - 1.0))).max() <= 1e-12


def test_kendall_T_zero_scaling():
    x = np.array([[5.0, 5.0, 5.0], [1.0, 2.0, 3.0]])
    with pytest.raises(ZeroScalingError) as exc:
        rs.kendall_T(x)
    assert exc.value.rows == [0]


def test_monotone_invariance_of_rank_matrices():
    rng = np.random.default_rng(18)
    x = rng.integers(0, 4, size=(5, 25)).astype(float)
    y = x.copy()
    y[2] = np.exp(y[2])  # strictly increasing transform of one row
    assert np.array_equal(rs.spearman(rs.rank_rows(x)).entries, rs.spearman(rs.rank_rows(y)).entries)
    assert np.array_equal(rs.kendall_tau(x).entries, rs.kendall_tau(y).entries)
    assert np.array_equal(rs.kendall_T(x).entries, rs.kendall_T(y).entries)


def test_correlation_rows_hand_example():
    y = rs.correlation_rows(np.array([[3.0, 4.0]]))
    assert np.allclose(y.rows, [[0.6, 0.8]], atol=1e-15)


def test_correlation_rows_centered_degenerate():
    with pytest.raises(DegenerateRowError):
        rs.correlation_rows(np.array([[1.0, 1.0, 1.0]]), centered=True)


def test_correlation_rows_zero_norm():
    with pytest.raises(DegenerateRowError):
        rs.correlation_rows(np.array([[0.0, 0.0, 0.0]]), centered=False)


def test_correlation_rows_centered_sum_zero():
    rng = np.random.default_rng(19)
    y = rs.correlation_rows(rng.normal(size=(8, 50)), centered=True)
    assert np.abs(y.rows.sum(axis=1)).max() < 1e-12


def test_sample_correlation_trivial():
    assert rs.sample_correlation(np.array([[1.0, 2.0]])).entries[0, 0] == pytest.approx(
        1.0, abs=1e-12
    )
    x = np.array([[1.0, 2.0, 3.0], [2.0, 4.0, 6.0]])
    assert rs.sample_correlation(x).entries[0, 1] == pytest.approx(1.0, abs=1e-12)
    x = np.array([[1.0, 2.0, 3.0], [-1.0, -2.0, -3.0]])
    assert rs.sample_correlation(x).entries[0, 1] == pytest.approx(-1.0, abs=1e-12)


def test_sample_correlation_scale_invariance():
    rng = np.random.default_rng(20)
    x = rng.normal(size=(6, 30))
    scaled = x.copy()
    scaled[3] *= 17.5
    for centered in (False, True):
        a = rs.sample_correlation(x, centered=centered).entries
        b = rs.sample_correlation(scaled, centered=centered).entries
        assert np.abs(a - b).max() < 1e-12

"""Rank, kernel, eigenvalue and subspace arithmetic against hand-built cases."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from univcert import numlin


def test_kernel_of_rank_one_matrix():
    m = np.outer([1.0, 2.0, 3.0], [1.0, 0.0, -1.0])
    basis = numlin.svd_kernel(m)
    assert basis.dim == 2
    assert np.linalg.norm(m @ basis.columns) < 1e-12
    # columns are orthonormal
    g = basis.columns.conj().T @ basis.columns
    assert np.allclose(g, np.eye(2), atol=1e-12)


def test_zero_matrix_has_full_kernel():
    basis = numlin.svd_kernel(np.zeros((3, 5)))
    assert basis.dim == 5
    assert basis.ambient_dim == 5


def test_wide_matrix_kernel_counts_missing_rows():
    # 2 x 4 of full row rank: kernel dimension must be 2, not 0
    m = np.array([[1.0, 0, 0, 0], [0, 1.0, 0, 0]])
    basis = numlin.svd_kernel(m)
    assert basis.dim == 2
    assert np.linalg.norm(m @ basis.columns) < 1e-12


def test_rank_corank_kernel_dim_accounting():
    m = np.diag([5.0, 3.0, 1e-12, 0.0])
    assert numlin.numerical_rank(m) == 2
    assert numlin.corank(m) == 2
    assert numlin.kernel_dim(m) == 2
    assert numlin.kernel_dim(m, tol_rel=1e-14) == 1


def test_sigma_min_of_shift_section():
    m = np.eye(4, k=1)
    assert numlin.sigma_min(m) == pytest.approx(0.0, abs=1e-15)
    assert numlin.singular_values(m)[0] == pytest.approx(1.0)


def test_eigenvalues_sorted_and_complete():
    m = np.diag([3.0, -1.0, 2.0, -1.0])
    ev = numlin.eigenvalues(m)
    assert np.allclose(sorted(np.abs(ev)), np.abs(ev))
    assert np.allclose(np.sort(ev.real), [-1.0, -1.0, 2.0, 3.0])


def test_eigenvalues_require_square():
    with pytest.raises(ValueError):
        numlin.eigenvalues(np.zeros((2, 3)))


def test_subspace_sum_and_intersection_oracle():
    e = np.eye(4)
    u = numlin.SubspaceBasis(e[:, :2], 1e-8)           # span{e0, e1}
    v = numlin.SubspaceBasis(e[:, 1:3], 1e-8)          # span{e1, e2}
    assert numlin.subspace_sum_dim(u, v) == 3
    assert numlin.subspace_intersection_dim(u, v) == 1
    w = numlin.SubspaceBasis(np.zeros((4, 0)), 1e-8)
    assert numlin.subspace_sum_dim(u, w) == 2
    assert numlin.subspace_intersection_dim(u, w) == 0


def test_subspace_ambient_mismatch_raises():
    u = numlin.SubspaceBasis(np.eye(3)[:, :1], 1e-8)
    v = numlin.SubspaceBasis(np.eye(4)[:, :1], 1e-8)
    with pytest.raises(ValueError):
        numlin.subspace_sum_dim(u, v)


def test_accepts_objects_with_entries_attribute():
    class Box:
        entries = np.eye(3)

    assert numlin.numerical_rank(Box()) == 3


@settings(max_examples=25, deadline=None)
@given(st.integers(3, 10), st.integers(0, 5), st.integers(0, 999))
def test_similarity_preserves_kernel_dimensions(n, defect, seed):
    rng = np.random.default_rng(seed)
    k = min(defect, n - 1)
    d = np.ones(n)
    d[:k] = 0.0
    a = np.diag(d)
    s = np.eye(n) + 0.1 * rng.standard_normal((n, n))
    conj = s @ a @ np.linalg.inv(s)
    assert numlin.kernel_dim(conj) == k
    assert numlin.corank(conj) == k

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from relaymimo.numerics import (RandomSource, SingularMatrixError,
                                cgauss_matrix, herm, inv_hermitian, matmul,
                                trace)


def rand_c(shape, seed):
    r = np.random.default_rng(seed)
    return r.standard_normal(shape) + 1j * r.standard_normal(shape)


def naive_matmul(A, B):
    n, m = A.shape
    p = B.shape[1]
    out = np.zeros((n, p), dtype=complex)
    for i in range(n):
        for j in range(p):
            s = 0j
            for t in range(m):
                s += A[i, t] * B[t, j]
            out[i, j] = s
    return out


class TestCgauss:
    def test_shape_and_finite(self):
        M = cgauss_matrix(2, 3, RandomSource(1))
        assert M.shape == (2, 3)
        assert np.all(np.isfinite(M))

    def test_unit_power_column(self):
        M = cgauss_matrix(1000, 1, RandomSource(5))
        assert 0.9 <= np.mean(np.abs(M) ** 2) <= 1.1

    def test_deterministic(self):
        a = cgauss_matrix(4, 3, RandomSource(9, 2))
        b = cgauss_matrix(4, 3, RandomSource(9, 2))
        assert np.array_equal(a, b)

    def test_streams_differ(self):
        a = cgauss_matrix(4, 3, RandomSource(9, 2))
        b = cgauss_matrix(4, 3, RandomSource(9, 3))
        assert not np.array_equal(a, b)

    def test_moments_within_three_stderr(self):
        z = cgauss_matrix(100_000, 1, RandomSource(123)).ravel()
        p = np.abs(z) ** 2
        assert abs(p.mean() - 1) < 3 * p.std() / np.sqrt(p.size)
        for part in (z.real, z.imag):
            assert abs(part.mean()) < 3 * part.std() / np.sqrt(part.size)
            # each component carries half the power
            assert abs(part.var() - 0.5) < 0.01

    def test_disjoint_streams_uncorrelated(self):
        a = cgauss_matrix(10_000, 1, RandomSource(3, 0)).ravel().real
        b = cgauss_matrix(10_000, 1, RandomSource(3, 1)).ravel().real
        assert abs(np.corrcoef(a, b)[0, 1]) < 0.05

    @pytest.mark.parametrize("rows,cols", [(0, 3), (2, 0)])
    def test_rejects_empty(self, rows, cols):
        with pytest.raises(ValueError):
            cgauss_matrix(rows, cols, RandomSource(0))

    def test_split_children_distinct(self):
        kids = RandomSource(1, 7).split(2)
        assert [k.stream for k in kids] == [14, 15]
        assert RandomSource(1, 6).split(2)[1].stream == 13


class TestHermMatmul:
    def test_scalar(self):
        assert herm(np.array([[1j]]))[0, 0] == -1j

    def test_shape(self):
        assert herm(np.zeros((2, 3), complex)).shape == (3, 2)

    def test_involution(self):
        A = rand_c((4, 4), 0)
        assert np.array_equal(herm(herm(A)), A)

    def test_identity(self):
        A = rand_c((3, 4), 1)
        assert np.array_equal(matmul(A, np.eye(4)), A)

    def test_scalar_product(self):
        assert matmul(np.array([[1 + 1j]]), np.array([[1 - 1j]]))[0, 0] == 2

    def test_against_triple_loop(self):
        A, B = rand_c((3, 5), 2), rand_c((5, 2), 3)
        ref = naive_matmul(A, B)
        np.testing.assert_allclose(matmul(A, B), ref, rtol=1e-12)

    def test_mismatch(self):
        with pytest.raises(ValueError):
            matmul(np.zeros((2, 3)), np.zeros((2, 3)))

    @settings(max_examples=30, deadline=None)
    @given(st.integers(1, 5), st.integers(1, 5), st.integers(1, 5),
           st.integers(0, 2**32 - 1))
    def test_adjoint_of_product(self, n, m, p, seed):
        A, B = rand_c((n, m), seed), rand_c((m, p), seed + 1)
        np.testing.assert_allclose(herm(matmul(A, B)),
                                   matmul(herm(B), herm(A)), atol=1e-12)


class TestInverse:
    def test_identity(self):
        np.testing.assert_array_equal(inv_hermitian(np.eye(4)), np.eye(4))

    def test_diag(self):
        np.testing.assert_allclose(inv_hermitian(np.diag([2.0, 4.0])),
                                   np.diag([0.5, 0.25]))

    def test_gram_residual(self):
        X = rand_c((64, 4), 4)
        A = herm(X) @ X
        Ainv = inv_hermitian(A)
        assert np.max(np.abs(A @ Ainv - np.eye(4))) < 1e-9
        np.testing.assert_array_equal(Ainv, herm(Ainv))

    def test_needs_pivoting(self):
        # zero leading entry; elimination without row swaps would divide by 0
        A = np.array([[0, 1], [1, 0]], dtype=complex)
        np.testing.assert_allclose(inv_hermitian(A) @ A, np.eye(2))

    def test_non_square(self):
        with pytest.raises(ValueError):
            inv_hermitian(np.zeros((2, 3)))

    def test_singular_reports_pivot(self):
        X = rand_c((2, 3), 5)
        with pytest.raises(SingularMatrixError) as exc:
            inv_hermitian(herm(X) @ X)   # rank 2, size 3
        assert exc.value.pivot < 1e-12 * exc.value.scale

    @settings(max_examples=30, deadline=None)
    @given(st.integers(1, 8), st.integers(0, 2**32 - 1))
    def test_residual_property(self, K, seed):
        X = rand_c((4 * K, K), seed)
        A = herm(X) @ X
        assert np.max(np.abs(A @ inv_hermitian(A) - np.eye(K))) < 1e-9


class TestTrace:
    def test_identity(self):
        assert trace(np.eye(5)) == 5

    def test_diag(self):
        assert trace(np.diag([1 + 1j, 2])) == 3 + 1j

    def test_cyclic(self):
        A, B = rand_c((3, 6), 6), rand_c((6, 3), 7)
        assert abs(trace(A @ B) - trace(B @ A)) < 1e-12 * abs(trace(A @ B))

    def test_non_square(self):
        with pytest.raises(ValueError):
            trace(np.zeros((2, 3)))

import numpy as np
import pytest

from qcsim.linalg import (
    generalized_eig,
    hermitian_eig,
    indefinite_generalized_eig,
    poly_roots,
    solve_regularized_lsq,
)


class TestHermitianEig:
    def test_diagonal(self):
        values, _ = hermitian_eig(np.diag([1.0, -1.0]))
        assert np.allclose(values, [-1.0, 1.0])

    def test_pauli_x(self):
        x = np.array([[0, 1], [1, 0]], dtype=complex)
        values, vectors = hermitian_eig(x)
        assert np.allclose(values, [-1.0, 1.0])
        minus = np.array([1, -1]) / np.sqrt(2)
        overlap = abs(np.vdot(vectors[:, 0], minus))
        assert overlap == pytest.approx(1.0, abs=1e-12)

    def test_h2_spectrum_reconstruction(self, h2):
        from qcsim.pauli import to_matrix

        matrix = to_matrix(h2, 2)
        values, vectors = hermitian_eig(matrix)
        assert len(values) == 4
        rebuilt = vectors @ np.diag(values) @ vectors.conj().T
        scale = np.abs(matrix).max()
        assert np.abs(rebuilt - matrix).max() < 1e-8 * scale
        # cross-check the minimum against the even/odd parity block structure
        odd_block = np.array([[matrix[2, 2], matrix[2, 1]], [matrix[1, 2], matrix[1, 1]]])
        block_min = np.linalg.eigvalsh(odd_block)[0]
        assert values[0] == pytest.approx(block_min, abs=1e-12)

    def test_orthonormal_vectors(self):
        rng = np.random.default_rng(1)
        a = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
        m = a + a.conj().T
        _, vectors = hermitian_eig(m)
        assert np.abs(vectors.conj().T @ vectors - np.eye(6)).max() < 1e-10

    def test_non_hermitian_rejected(self):
        with pytest.raises(ValueError):
            hermitian_eig(np.array([[0.0, 1.0], [0.0, 0.0]]))


class TestRegularizedLsq:
    def test_identity(self):
        b = np.array([1.0, 2.0, 3.0])
        assert np.allclose(solve_regularized_lsq(np.eye(3), b, 0.0), b)

    def test_zero_matrix_with_ridge(self):
        x = solve_regularized_lsq(np.zeros((3, 3)), np.ones(3), 1e-3)
        assert np.allclose(x, 0.0)

    def test_random_well_conditioned_residual(self):
        rng = np.random.default_rng(4)
        a = rng.normal(size=(3, 3)) + np.eye(3) * 3
        b = rng.normal(size=3)
        x = solve_regularized_lsq(a, b, 0.0)
        assert np.linalg.norm(a @ x - b) < 1e-10

    def test_ridge_shrinks_solution(self):
        rng = np.random.default_rng(5)
        a = rng.normal(size=(4, 4)) + np.eye(4) * 2
        b = rng.normal(size=4)
        plain = solve_regularized_lsq(a, b, 0.0)
        ridged = solve_regularized_lsq(a, b, 10.0)
        assert np.linalg.norm(ridged) < np.linalg.norm(plain)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            solve_regularized_lsq(np.eye(3), np.ones(2), 0.0)

    def test_negative_ridge_rejected(self):
        with pytest.raises(ValueError):
            solve_regularized_lsq(np.eye(2), np.ones(2), -1.0)


class TestGeneralizedEig:
    def test_identity_overlap_reduces_to_hermitian_eig(self):
        rng = np.random.default_rng(6)
        a = rng.normal(size=(5, 5))
        m = a + a.T
        direct, _ = hermitian_eig(m)
        general = generalized_eig(m, np.eye(5))
        assert np.allclose(direct, general, atol=1e-10)

    def test_proportional_pencil(self):
        rng = np.random.default_rng(7)
        a = rng.normal(size=(4, 4))
        s = a @ a.T + np.eye(4)  # positive definite
        values = generalized_eig(2.0 * s, s)
        assert np.allclose(values, 2.0, atol=1e-10)

    def test_rank_deficient_overlap(self):
        s = np.diag([1.0, 1.0, 0.0])
        m = np.diag([1.0, 2.0, 3.0])
        values = generalized_eig(m, s, threshold=1e-10)
        assert len(values) == 2  # survivor count equals numerical rank

    def test_negative_overlap_rejected(self):
        with pytest.raises(ValueError):
            generalized_eig(np.eye(2), np.diag([1.0, -0.5]))


class TestIndefiniteGeneralizedEig:
    def test_sign_metric(self):
        a = np.diag([3.0, 5.0])
        b = np.diag([1.0, -1.0])
        values, rank = indefinite_generalized_eig(a, b)
        assert rank == 2
        assert np.allclose(values, [-5.0, 3.0])

    def test_projects_null_directions(self):
        a = np.diag([3.0, 5.0, 7.0])
        b = np.diag([1.0, -1.0, 0.0])
        values, rank = indefinite_generalized_eig(a, b)
        assert rank == 2 and len(values) == 2


class TestPolyRoots:
    def test_quadratic(self):
        roots = sorted(poly_roots(np.array([-1.0, 0.0, 1.0])).real)
        assert np.allclose(roots, [-1.0, 1.0])

    def test_linear(self):
        assert poly_roots(np.array([-3.0, 1.0]))[0] == pytest.approx(3.0)

    def test_random_cubic_recovers_roots(self):
        rng = np.random.default_rng(8)
        for _ in range(50):
            chosen = np.sort(rng.normal(size=3))
            coeffs = np.poly(chosen)[::-1]  # ascending
            got = np.sort(poly_roots(coeffs).real)
            assert np.allclose(got, chosen, atol=1e-8)

    def test_residual_bound_property(self):
        rng = np.random.default_rng(9)
        for _ in range(1000):
            degree = int(rng.integers(1, 9))
            coeffs = rng.normal(size=degree + 1)
            if abs(coeffs[-1]) < 0.1:
                coeffs[-1] = 1.0
            roots = poly_roots(coeffs)
            norm = np.linalg.norm(coeffs)
            for root in roots:
                value = sum(c * root**k for k, c in enumerate(coeffs))
                assert abs(value) <= 1e-8 * norm * max(1.0, abs(root) ** degree)

    def test_zero_leading_coefficient(self):
        with pytest.raises(ValueError):
            poly_roots(np.array([1.0, 2.0, 0.0]))

    def test_degree_cap(self):
        with pytest.raises(ValueError):
            poly_roots(np.ones(18))

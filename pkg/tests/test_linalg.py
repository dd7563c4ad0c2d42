import numpy as np
import pytest

from Complementarity.entity.linalg import (dagger, eig_hermitian, frobenius_product, kron, kron_all, mat_sqrt_psd,
                                           norm_hs_sq_offdiag, norm_l1_offdiag, partial_trace, trace,
                                           trace_distance)
from Complementarity.entity.quantum_state import WernerParams, werner_purification, werner_state
from Complementarity.exception import DimensionMismatch, NotHermitian, NotPSD

I2 = np.eye(2)
X = np.array([[0, 1], [1, 0]], dtype=complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
PLUS = np.full((2, 2), 0.5, dtype=complex)


def _basis(index, dim):
    vector = np.zeros(dim, dtype=complex)
    vector[index] = 1.0
    return vector


def _random_hermitian(rng, dim):
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return (g + dagger(g)) / 2


class TestKron:

    def test_identity_factors(self):
        np.testing.assert_array_equal(kron(I2, I2), np.eye(4))

    def test_first_factor_is_slow_index(self):
        # X on the slow factor maps |00> to |10>, basis index 2
        np.testing.assert_allclose(kron(X, I2) @ _basis(0, 4), _basis(2, 4))

    def test_hadamard_pair_gives_uniform_amplitudes(self):
        np.testing.assert_allclose(kron(H, H) @ _basis(0, 4), np.full(4, 0.5), atol=1e-15)

    def test_kron_all_matches_nested_kron(self, rng):
        a, b, c = (_random_hermitian(rng, 2) for _ in range(3))
        np.testing.assert_allclose(kron_all([a, b, c]), kron(kron(a, b), c))


class TestEigHermitian:

    def test_diagonal_input(self):
        eigenvalues, eigenvectors = eig_hermitian(np.diag([0.25, 0.75]))
        np.testing.assert_allclose(eigenvalues, [0.25, 0.75])
        np.testing.assert_allclose(np.abs(eigenvectors), np.eye(2))

    def test_projector_spectrum(self):
        eigenvalues, _ = eig_hermitian((I2 + X) / 2)
        np.testing.assert_allclose(eigenvalues, [0.0, 1.0], atol=1e-15)

    def test_werner_spectrum(self):
        eigenvalues, _ = eig_hermitian(werner_state(WernerParams(w=0.5, x=0.3)).matrix)
        np.testing.assert_allclose(eigenvalues, [0.25, 0.75], atol=1e-14)

    def test_reconstruction_and_orthonormality(self, rng):
        for dim in (2, 4, 8):
            m = _random_hermitian(rng, dim)
            eigenvalues, v = eig_hermitian(m)
            np.testing.assert_allclose(dagger(v) @ v, np.eye(dim), atol=1e-12)
            np.testing.assert_allclose(v @ np.diag(eigenvalues) @ dagger(v), m, atol=1e-10)
            assert np.all(np.diff(eigenvalues) >= 0)

    def test_rejects_non_hermitian(self):
        with pytest.raises(NotHermitian):
            eig_hermitian(np.array([[1.0, 1.0], [0.0, 1.0]]))

    def test_rejects_non_square(self):
        with pytest.raises(DimensionMismatch):
            eig_hermitian(np.ones((2, 3)))


class TestMatSqrtPsd:

    def test_half_identity(self):
        np.testing.assert_allclose(mat_sqrt_psd(I2 / 2), np.eye(2) / np.sqrt(2), atol=1e-15)

    def test_projector_is_its_own_root(self):
        np.testing.assert_allclose(mat_sqrt_psd(PLUS), PLUS, atol=1e-14)

    def test_werner_root(self):
        rho = werner_state(WernerParams(w=0.8, x=0.5)).matrix
        root = mat_sqrt_psd(rho)
        np.testing.assert_allclose(np.linalg.eigvalsh(root), [np.sqrt(0.1), np.sqrt(0.9)], atol=1e-12)
        np.testing.assert_allclose(root @ root, rho, atol=1e-8)
        np.testing.assert_allclose(root[0, 1], (np.sqrt(0.9) - np.sqrt(0.1)) / 2, atol=1e-12)

    def test_small_negative_eigenvalue_is_clipped(self):
        root = mat_sqrt_psd(np.diag([1.0, -1e-12]))
        np.testing.assert_allclose(root, np.diag([1.0, 0.0]), atol=1e-15)

    def test_rejects_negative_spectrum(self):
        with pytest.raises(NotPSD):
            mat_sqrt_psd(np.diag([1.2, -0.2]))


class TestPartialTrace:

    def test_product_state(self):
        zero_zero = np.outer(_basis(0, 4), _basis(0, 4))
        np.testing.assert_allclose(partial_trace(zero_zero, [2, 2], [0]), np.diag([1.0, 0.0]))

    def test_bell_state_reduces_to_maximally_mixed(self):
        bell = (_basis(0, 4) + _basis(3, 4)) / np.sqrt(2)
        np.testing.assert_allclose(partial_trace(np.outer(bell, bell), [2, 2], [0]), I2 / 2, atol=1e-15)

    def test_purification_reduces_to_werner_state(self):
        params = WernerParams(w=0.6, x=0.25)
        psi = np.asarray(werner_purification(params).amplitudes)
        reduced = partial_trace(np.outer(psi, np.conj(psi)), [2, 2], [0])
        np.testing.assert_allclose(reduced, werner_state(params).matrix, atol=1e-12)

    def test_keeps_the_requested_factor(self, rng):
        a = _random_hermitian(rng, 2)
        b = _random_hermitian(rng, 4)
        a, b = a @ a + np.eye(2), b @ b + np.eye(4)
        a, b = a / np.trace(a), b / np.trace(b)
        # b occupies subsystems 0 and 1, a is subsystem 2
        product = kron(a, b)
        np.testing.assert_allclose(partial_trace(product, [2, 2, 2], [2]), a, atol=1e-12)
        np.testing.assert_allclose(partial_trace(product, [2, 2, 2], [0, 1]), b, atol=1e-12)

    def test_trace_is_preserved(self, rng):
        m = _random_hermitian(rng, 8)
        assert abs(np.trace(partial_trace(m, [2, 4], [1])) - np.trace(m)) < 1e-12

    @pytest.mark.parametrize("dims, keep", [([2, 3], [0]), ([2, 2], []), ([2, 2], [2]), ([2, 2], [0, 0])])
    def test_invalid_subsystems(self, dims, keep):
        with pytest.raises(DimensionMismatch):
            partial_trace(np.eye(4), dims, keep)


class TestNorms:

    def test_offdiagonal_norms(self):
        assert norm_l1_offdiag(I2) == 0.0
        assert norm_l1_offdiag(PLUS) == pytest.approx(1.0)
        assert norm_hs_sq_offdiag(PLUS) == pytest.approx(0.5)

    def test_trace_and_frobenius_product(self):
        assert trace(PLUS) == pytest.approx(1.0)
        assert frobenius_product(I2, I2) == pytest.approx(2.0)
        assert frobenius_product(1j * I2, I2) == pytest.approx(-2.0j)

    def test_trace_distance_of_orthogonal_states(self):
        assert trace_distance(np.diag([1.0, 0.0]), np.diag([0.0, 1.0])) == pytest.approx(1.0)

    def test_shape_mismatch(self):
        with pytest.raises(DimensionMismatch):
            frobenius_product(I2, np.eye(4))

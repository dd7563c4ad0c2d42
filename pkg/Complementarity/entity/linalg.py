"""
Dense complex linear algebra for small quantum systems.

Conventions used across the package:
  * matrices are ``numpy.ndarray`` of dtype complex128, row-major;
  * qubit indexing is little-endian: qubit 0 is the least significant bit of a
    basis index, so a composite operator for qubits (n-1, ..., 0) is
    ``kron(M_{n-1}, ..., M_0)``;
  * subsystem lists passed to ``partial_trace`` follow the same order, entry 0
    being the fastest-varying factor.
"""
from collections import namedtuple
from typing import Sequence

import numpy as np

from Complementarity.constant import HERMITIAN_TOLERANCE, PSD_TOLERANCE
from Complementarity.exception import DimensionMismatch, NotHermitian, NotPSD

ComplexMatrix = np.ndarray

EigenDecomposition = namedtuple("EigenDecomposition", ["eigenvalues", "eigenvectors"])

_SUBSCRIPTS = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"


def as_complex_matrix(m) -> ComplexMatrix:
    matrix = np.asarray(m, dtype=np.complex128)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.shape[0] < 1:
        raise DimensionMismatch(f"expected a non-empty square matrix, got shape {matrix.shape}")
    return matrix


def dagger(m: ComplexMatrix) -> ComplexMatrix:
    return np.conj(m).T


def hermiticity_error(m: ComplexMatrix) -> float:
    matrix = as_complex_matrix(m)
    return float(np.max(np.abs(matrix - dagger(matrix))))


def kron(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    """Kronecker product with ``a``'s index as the slow index."""
    return np.kron(np.asarray(a, dtype=np.complex128), np.asarray(b, dtype=np.complex128))


def kron_all(factors: Sequence[ComplexMatrix]) -> ComplexMatrix:
    result = np.ones((1, 1), dtype=np.complex128)
    for factor in factors:
        result = kron(result, factor)
    return result


def eig_hermitian(m: ComplexMatrix, tolerance: float = HERMITIAN_TOLERANCE) -> EigenDecomposition:
    """
    Eigendecomposition of a Hermitian matrix.
    Eigenvalues are real and ascending; eigenvector columns are orthonormal.
    Raises NotHermitian when max|m - m^dagger| exceeds ``tolerance``.
    """
    matrix = as_complex_matrix(m)
    error = hermiticity_error(matrix)
    if error > tolerance:
        raise NotHermitian(f"max |m - m^dagger| = {error:.3e} exceeds {tolerance:.1e}")
    # symmetrise away round-off before handing to LAPACK
    eigenvalues, eigenvectors = np.linalg.eigh((matrix + dagger(matrix)) / 2)
    return EigenDecomposition(eigenvalues=eigenvalues, eigenvectors=eigenvectors)


def clipped_spectrum(m: ComplexMatrix, tolerance: float = PSD_TOLERANCE) -> EigenDecomposition:
    """Spectrum with eigenvalues in [-tolerance, 0) set to zero; NotPSD below that."""
    decomposition = eig_hermitian(m)
    smallest = float(decomposition.eigenvalues[0])
    if smallest < -tolerance:
        raise NotPSD(f"eigenvalue {smallest:.3e} is below -{tolerance:.0e}")
    return EigenDecomposition(eigenvalues=np.clip(decomposition.eigenvalues, 0.0, None),
                              eigenvectors=decomposition.eigenvectors)


def spectral_function(m: ComplexMatrix, function) -> ComplexMatrix:
    """V f(lambda) V^dagger over the clipped spectrum of a PSD matrix."""
    eigenvalues, eigenvectors = clipped_spectrum(m)
    return (eigenvectors * function(eigenvalues)) @ dagger(eigenvectors)


def mat_sqrt_psd(m: ComplexMatrix) -> ComplexMatrix:
    root = spectral_function(m, np.sqrt)
    return (root + dagger(root)) / 2


def _validate_subsystems(dim: int, dims: Sequence[int], keep: Sequence[int]):
    if len(dims) == 0 or any(int(d) < 1 for d in dims):
        raise DimensionMismatch(f"invalid subsystem dimensions {list(dims)}")
    if int(np.prod(dims)) != dim:
        raise DimensionMismatch(f"product of {list(dims)} does not equal matrix dimension {dim}")
    if len(keep) == 0:
        raise DimensionMismatch("at least one subsystem must be kept")
    if len(set(keep)) != len(keep) or any(k < 0 or k >= len(dims) for k in keep):
        raise DimensionMismatch(f"keep={list(keep)} is not a subset of subsystems 0..{len(dims) - 1}")
    if 2 * len(dims) > len(_SUBSCRIPTS):
        raise DimensionMismatch(f"too many subsystems ({len(dims)})")


def partial_trace(m: ComplexMatrix, dims: Sequence[int], keep: Sequence[int]) -> ComplexMatrix:
    """
    Reduced matrix on the subsystems listed in ``keep``.

    ``dims[k]`` is the dimension of subsystem k with subsystem 0 the least
    significant factor (qubit 0 for qubit registers). The kept subsystems retain
    their relative order.
    """
    matrix = as_complex_matrix(m)
    dims = [int(d) for d in dims]
    keep = [int(k) for k in keep]
    _validate_subsystems(matrix.shape[0], dims, keep)

    n = len(dims)
    # axis i of the reshaped tensor holds subsystem n-1-i (most significant first)
    tensor = matrix.reshape(list(reversed(dims)) * 2)
    row_labels = [_SUBSCRIPTS[i] for i in range(n)]
    col_labels = [_SUBSCRIPTS[n + i] for i in range(n)]
    kept_axes = sorted(n - 1 - k for k in keep)
    for axis in range(n):
        if axis not in kept_axes:
            col_labels[axis] = row_labels[axis]
    output = "".join(row_labels[a] for a in kept_axes) + "".join(col_labels[a] for a in kept_axes)
    reduced = np.einsum(f"{''.join(row_labels)}{''.join(col_labels)}->{output}", tensor)
    kept_dim = int(np.prod([dims[k] for k in keep]))
    return reduced.reshape(kept_dim, kept_dim)


def norm_l1_offdiag(m: ComplexMatrix) -> float:
    matrix = as_complex_matrix(m)
    magnitudes = np.abs(matrix)
    return float(np.sum(magnitudes) - np.sum(np.diag(magnitudes)))


def norm_hs_sq_offdiag(m: ComplexMatrix) -> float:
    matrix = as_complex_matrix(m)
    squares = np.abs(matrix) ** 2
    return float(np.sum(squares) - np.sum(np.diag(squares)))


def trace(m: ComplexMatrix) -> complex:
    return complex(np.trace(as_complex_matrix(m)))


def frobenius_product(a: ComplexMatrix, b: ComplexMatrix) -> complex:
    """Tr(a^dagger b)."""
    left, right = as_complex_matrix(a), as_complex_matrix(b)
    if left.shape != right.shape:
        raise DimensionMismatch(f"shapes {left.shape} and {right.shape} differ")
    return complex(np.sum(np.conj(left) * right))


def trace_distance(a: ComplexMatrix, b: ComplexMatrix) -> float:
    left, right = as_complex_matrix(a), as_complex_matrix(b)
    if left.shape != right.shape:
        raise DimensionMismatch(f"shapes {left.shape} and {right.shape} differ")
    difference = left - right
    eigenvalues = np.linalg.eigvalsh((difference + dagger(difference)) / 2)
    return float(0.5 * np.sum(np.abs(eigenvalues)))

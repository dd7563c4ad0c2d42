"""
Validated quantum states, the one-qubit Werner-like family and its purification.

States are little-endian: the amplitude index of a basis state is
sum_q bit_q * 2**q. In the two-qubit purification, the quanton A is qubit 0 and
the purifying system B is qubit 1.
"""
from collections import namedtuple

import numpy as np

from Complementarity.constant import (NORMALIZATION_TOLERANCE, PSD_TOLERANCE, TRACE_TOLERANCE,
                                      HERMITIAN_TOLERANCE)
from Complementarity.entity.linalg import (ComplexMatrix, as_complex_matrix, dagger, eig_hermitian,
                                           hermiticity_error, partial_trace)
from Complementarity.exception import (DimensionMismatch, InvalidParameter, NotHermitian, NotPSD,
                                       TraceNotOne)

DensityMatrix = namedtuple("DensityMatrix", ["matrix", "num_qubits"])

StateVector = namedtuple("StateVector", ["amplitudes", "num_qubits"])


class WernerParams(namedtuple("WernerParams", ["w", "x"])):
    """Mixing weight ``w`` and population parameter ``x``, both in [0, 1]."""
    __slots__ = ()

    def __new__(cls, w: float, x: float):
        w, x = float(w), float(x)
        for name, value in (("w", w), ("x", x)):
            if not 0.0 <= value <= 1.0:
                raise InvalidParameter(f"{name}={value} is outside [0, 1]")
        return super().__new__(cls, w, x)


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


def num_qubits_for_dimension(dim: int) -> int:
    num_qubits = int(dim).bit_length() - 1
    if dim < 2 or 2 ** num_qubits != dim:
        raise DimensionMismatch(f"dimension {dim} is not a power of two >= 2")
    return num_qubits


def validate(m: ComplexMatrix) -> DensityMatrix:
    """
    Checks the density-matrix axioms and returns the validated state.
    Raises NotHermitian, TraceNotOne or NotPSD naming the axiom that failed.
    """
    matrix = as_complex_matrix(m)
    num_qubits = num_qubits_for_dimension(matrix.shape[0])

    error = hermiticity_error(matrix)
    if error > HERMITIAN_TOLERANCE:
        raise NotHermitian(f"max |rho - rho^dagger| = {error:.3e}")

    trace_value = complex(np.trace(matrix))
    if abs(trace_value - 1.0) > TRACE_TOLERANCE:
        raise TraceNotOne(f"trace is {trace_value.real:.12g}")

    smallest = float(eig_hermitian(matrix).eigenvalues[0])
    if smallest < -PSD_TOLERANCE:
        raise NotPSD(f"smallest eigenvalue is {smallest:.3e}")

    return DensityMatrix(matrix=_frozen(matrix.copy()), num_qubits=num_qubits)


def state_vector(amplitudes) -> StateVector:
    vector = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
    num_qubits = num_qubits_for_dimension(vector.shape[0])
    norm = float(np.vdot(vector, vector).real)
    if abs(norm - 1.0) > NORMALIZATION_TOLERANCE:
        raise InvalidParameter(f"squared norm is {norm:.15g}, expected 1")
    return StateVector(amplitudes=_frozen(vector.copy()), num_qubits=num_qubits)


def zero_state(num_qubits: int) -> StateVector:
    vector = np.zeros(2 ** num_qubits, dtype=np.complex128)
    vector[0] = 1.0
    return state_vector(vector)


def pure_density(psi: StateVector) -> DensityMatrix:
    amplitudes = np.asarray(psi.amplitudes)
    return validate(np.outer(amplitudes, np.conj(amplitudes)))


def werner_state(p: WernerParams) -> DensityMatrix:
    """w |psi><psi| + (1-w)/2 I with |psi> = sqrt(x)|0> + sqrt(1-x)|1>."""
    psi = np.array([np.sqrt(p.x), np.sqrt(1.0 - p.x)], dtype=np.complex128)
    rho = p.w * np.outer(psi, psi) + (1.0 - p.w) / 2.0 * np.eye(2)
    return validate(rho)


def werner_purification(p: WernerParams) -> StateVector:
    """
    Two-qubit purification of ``werner_state(p)``:
    (-sqrt(1-x)|0> + sqrt(x)|1>)_A sqrt((1-w)/2)|0>_B + (sqrt(x)|0> + sqrt(1-x)|1>)_A sqrt((1+w)/2)|1>_B
    """
    branch_0 = np.array([-np.sqrt(1.0 - p.x), np.sqrt(p.x)], dtype=np.complex128)
    branch_1 = np.array([np.sqrt(p.x), np.sqrt(1.0 - p.x)], dtype=np.complex128)
    b_0 = np.array([np.sqrt((1.0 - p.w) / 2.0), 0.0], dtype=np.complex128)
    b_1 = np.array([0.0, np.sqrt((1.0 + p.w) / 2.0)], dtype=np.complex128)
    # B is qubit 1, the slow index
    vector = np.kron(b_0, branch_0) + np.kron(b_1, branch_1)
    return state_vector(vector)


def reduced_state(rho: DensityMatrix, keep) -> DensityMatrix:
    return validate(partial_trace(rho.matrix, [2] * rho.num_qubits, list(keep)))


def random_density_matrix(num_qubits: int, rng_seed) -> DensityMatrix:
    """G^dagger G / Tr(G^dagger G) with independent standard complex Gaussian entries."""
    rng = np.random.default_rng(rng_seed)
    dim = 2 ** num_qubits
    g = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    rho = dagger(g) @ g
    rho = (rho + dagger(rho)) / 2
    return validate(rho / np.trace(rho).real)


def random_pure_state(num_qubits: int, rng_seed) -> StateVector:
    """Haar-random pure state from a normalised complex Gaussian vector."""
    rng = np.random.default_rng(rng_seed)
    dim = 2 ** num_qubits
    vector = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return state_vector(vector / np.linalg.norm(vector))


def state_to_json(rho: DensityMatrix) -> dict:
    matrix = np.asarray(rho.matrix)
    return {"num_qubits": int(rho.num_qubits),
            "re": matrix.real.tolist(),
            "im": matrix.imag.tolist()}


def state_from_json(data: dict) -> DensityMatrix:
    try:
        matrix = np.asarray(data["re"], dtype=float) + 1j * np.asarray(data["im"], dtype=float)
        num_qubits = int(data["num_qubits"])
    except (KeyError, TypeError, ValueError) as e:
        raise DimensionMismatch(f"malformed state record: {e}") from e
    rho = validate(matrix)
    if rho.num_qubits != num_qubits:
        raise DimensionMismatch(f"num_qubits={num_qubits} does not match a {matrix.shape[0]}-dimensional matrix")
    return rho

"""
Noise applied between an ideal circuit and the measured counts: the depolarizing
channel, per-gate depolarizing kicks and independent per-qubit readout flips.
"""
import itertools
from collections import namedtuple
from functools import lru_cache
from typing import Sequence, Tuple

import numpy as np

from Complementarity.constant import (NOISE_DEPOLARIZING_KEY, NOISE_GATE_ERROR_KEY, NOISE_METADATA_KEY,
                                      NOISE_MULTI_QUBIT_GATE_ERROR_KEY, NOISE_READOUT_ERROR_KEY)
from Complementarity.entity.circuit_factory import Circuit, conjugate_local, gate_matrix
from Complementarity.entity.linalg import kron_all
from Complementarity.entity.quantum_state import DensityMatrix, validate
from Complementarity.exception import DimensionMismatch, InvalidParameter

PAULI_MATRICES = {
    "I": np.eye(2, dtype=np.complex128),
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "Z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}


def _probability(name: str, value) -> float:
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise InvalidParameter(f"{name}={value} is outside [0, 1]")
    return value


class NoiseParams(namedtuple("NoiseParams", ["depolarizing_p", "readout_error", "gate_error",
                                             "multi_qubit_gate_error", "metadata"])):
    """
    depolarizing_p: strength of the depolarizing channel applied to the prepared state
    readout_error: per-qubit (p(0->1), p(1->0)) flip probabilities, qubit 0 first
    gate_error: per-qubit depolarizing strength after single-qubit gates
    multi_qubit_gate_error: depolarizing strength after gates on two or more wires
    metadata: calibration values kept for reference only (frequency, T1, T2, ...)

    Per-qubit lists shorter than the register are reused cyclically.
    """
    __slots__ = ()

    def __new__(cls, depolarizing_p: float = 0.0, readout_error: Sequence = (), gate_error: Sequence = (),
                multi_qubit_gate_error: float = 0.0, metadata: dict = None):
        readout = []
        for pair in readout_error:
            if np.isscalar(pair):
                pair = (pair, pair)
            if len(pair) != 2:
                raise InvalidParameter(f"readout error entry {pair!r} is not a (p01, p10) pair")
            readout.append((_probability("readout p01", pair[0]), _probability("readout p10", pair[1])))
        gate = tuple(_probability("gate_error", p) for p in gate_error)
        return super().__new__(cls, _probability("depolarizing_p", depolarizing_p), tuple(readout), gate,
                               _probability("multi_qubit_gate_error", multi_qubit_gate_error), dict(metadata or {}))

    def readout_for(self, qubit: int) -> Tuple[float, float]:
        if not self.readout_error:
            return (0.0, 0.0)
        return self.readout_error[qubit % len(self.readout_error)]

    def gate_error_for(self, qubit: int) -> float:
        if not self.gate_error:
            return 0.0
        return self.gate_error[qubit % len(self.gate_error)]

    @property
    def has_readout_error(self) -> bool:
        return any(p01 > 0.0 or p10 > 0.0 for p01, p10 in self.readout_error)

    @property
    def has_gate_error(self) -> bool:
        return self.multi_qubit_gate_error > 0.0 or any(p > 0.0 for p in self.gate_error)


NOISELESS = NoiseParams()


def noise_params_from_dict(data: dict) -> NoiseParams:
    data = dict(data or {})
    return NoiseParams(depolarizing_p=data.get(NOISE_DEPOLARIZING_KEY, 0.0),
                       readout_error=data.get(NOISE_READOUT_ERROR_KEY, ()),
                       gate_error=data.get(NOISE_GATE_ERROR_KEY, ()),
                       multi_qubit_gate_error=data.get(NOISE_MULTI_QUBIT_GATE_ERROR_KEY, 0.0),
                       metadata=data.get(NOISE_METADATA_KEY))


def depolarize(rho: DensityMatrix, p: float) -> DensityMatrix:
    """(1 - p) rho + p I/d"""
    p = _probability("p", p)
    matrix = np.asarray(rho.matrix, dtype=np.complex128)
    dim = matrix.shape[0]
    return validate((1.0 - p) * matrix + p * np.eye(dim) / dim)


@lru_cache(maxsize=None)
def _local_paulis(num_wires: int):
    return tuple(kron_all([PAULI_MATRICES[c] for c in label])
                 for label in itertools.product("IXYZ", repeat=num_wires))


def depolarize_wires(matrix: np.ndarray, p: float, wires: Sequence[int], num_qubits: int) -> np.ndarray:
    """
    Local depolarizing channel on ``wires``: (1 - p) rho + p Tr_wires(rho) (x) I/2^k,
    written as the Pauli twirl (1 - p) rho + p/4^k sum_P P rho P.
    """
    if p == 0.0:
        return matrix
    paulis = _local_paulis(len(wires))
    twirled = sum(conjugate_local(matrix, pauli, wires, num_qubits) for pauli in paulis) / len(paulis)
    return (1.0 - p) * matrix + p * twirled


def apply_noisy_circuit(c: Circuit, input: DensityMatrix, noise: NoiseParams = NOISELESS) -> DensityMatrix:
    """
    Evolves ``input`` through ``c`` with a depolarizing kick after every gate on
    that gate's wires, then applies the state-preparation depolarizing channel.
    """
    if c.num_qubits != input.num_qubits:
        raise DimensionMismatch(f"circuit acts on {c.num_qubits} qubit(s), state has {input.num_qubits}")
    matrix = np.asarray(input.matrix, dtype=np.complex128)
    for gate in c.gates:
        if not gate.is_unitary_op:
            continue
        matrix = conjugate_local(matrix, gate_matrix(gate), gate.wires, c.num_qubits)
        if len(gate.wires) == 1:
            strength = noise.gate_error_for(gate.wires[0])
        else:
            strength = noise.multi_qubit_gate_error
        matrix = depolarize_wires(matrix, strength, gate.wires, c.num_qubits)
    return depolarize(validate(matrix), noise.depolarizing_p)


def confusion_matrix(p01: float, p10: float) -> np.ndarray:
    """Column = prepared bit, row = read bit."""
    return np.array([[1.0 - p01, p10], [p01, 1.0 - p10]])


def confusion_matrices(noise: NoiseParams, num_qubits: int) -> list:
    return [confusion_matrix(*noise.readout_for(q)) for q in range(num_qubits)]


def apply_readout_error(bits: np.ndarray, noise: NoiseParams, rng: np.random.Generator) -> np.ndarray:
    """Flips column q of a (shots, num_qubits) bit array independently per shot."""
    flipped = bits.copy()
    for qubit in range(bits.shape[1]):
        p01, p10 = noise.readout_for(qubit)
        flip_probability = np.where(bits[:, qubit] == 0, p01, p10)
        flipped[:, qubit] ^= (rng.random(bits.shape[0]) < flip_probability).astype(bits.dtype)
    return flipped

"""
Gate catalog, circuit execution and random-circuit generation.

Wire convention: a gate's wires are listed control-first, and the gate matrix is
written in the little-endian basis of its own wires (wire 0 of the gate is the
least significant local bit). With that convention CX, CZ, SWAP and TOFFOLI are
plain permutation or phase matrices, e.g. CX with wires (control, target) swaps
local basis states 1 and 3.
"""
from collections import namedtuple
from typing import List, Sequence

import numpy as np

from Complementarity.constant import MAX_UNITARY_QUBITS
from Complementarity.entity.linalg import ComplexMatrix
from Complementarity.entity.quantum_state import (DensityMatrix, StateVector, WernerParams, state_vector,
                                                  validate)
from Complementarity.exception import DimensionMismatch, InvalidGate
from Complementarity.logger import logging

GateSpec = namedtuple("GateSpec", ["arity", "num_params"])

SINGLE_QUBIT_KINDS = ("I", "X", "Y", "Z", "H", "S", "Sdg", "T", "Tdg", "RX", "RY", "RZ", "U1", "U2", "U3")
PSEUDO_KINDS = ("BARRIER", "MEASURE")

GATE_CATALOG = {
    "I": GateSpec(1, 0), "X": GateSpec(1, 0), "Y": GateSpec(1, 0), "Z": GateSpec(1, 0),
    "H": GateSpec(1, 0), "S": GateSpec(1, 0), "Sdg": GateSpec(1, 0), "T": GateSpec(1, 0),
    "Tdg": GateSpec(1, 0), "RX": GateSpec(1, 1), "RY": GateSpec(1, 1), "RZ": GateSpec(1, 1),
    "U1": GateSpec(1, 1), "U2": GateSpec(1, 2), "U3": GateSpec(1, 3),
    "CX": GateSpec(2, 0), "CZ": GateSpec(2, 0), "SWAP": GateSpec(2, 0),
    "TOFFOLI": GateSpec(3, 0),
    "CONTROLLED": GateSpec(2, None),
}

# unitary kinds eligible for random circuits, in a fixed order so seeds are reproducible
RANDOM_CATALOG = tuple(GATE_CATALOG)

_SQRT2 = np.sqrt(2.0)


class Gate(namedtuple("Gate", ["kind", "params", "wires", "base"])):
    """
    One gate application. ``base`` names the single-qubit kind wrapped by a
    CONTROLLED gate and is None otherwise. BARRIER and MEASURE are accepted as
    pseudo-elements on any number of wires and act as the identity.
    """
    __slots__ = ()

    def __new__(cls, kind: str, params: Sequence[float] = (), wires: Sequence[int] = (), base: str = None):
        params = tuple(float(p) for p in params)
        wires = tuple(int(q) for q in wires)
        if len(wires) == 0 or len(set(wires)) != len(wires) or min(wires) < 0:
            raise InvalidGate(f"{kind}: wires {wires} must be distinct non-negative indices")

        if kind in PSEUDO_KINDS:
            if params or base is not None:
                raise InvalidGate(f"{kind} takes no parameters")
            return super().__new__(cls, kind, params, wires, None)

        if kind not in GATE_CATALOG:
            raise InvalidGate(f"unknown gate kind {kind!r}")
        entry = GATE_CATALOG[kind]
        num_params = entry.num_params
        if kind == "CONTROLLED":
            if base not in SINGLE_QUBIT_KINDS:
                raise InvalidGate(f"CONTROLLED needs a single-qubit base kind, got {base!r}")
            num_params = GATE_CATALOG[base].num_params
        elif base is not None:
            raise InvalidGate(f"{kind} does not take a base kind")
        if len(wires) != entry.arity:
            raise InvalidGate(f"{kind} acts on {entry.arity} wire(s), got {len(wires)}")
        if len(params) != num_params:
            raise InvalidGate(f"{kind} takes {num_params} parameter(s), got {len(params)}")
        return super().__new__(cls, kind, params, wires, base)

    @property
    def is_unitary_op(self) -> bool:
        return self.kind not in PSEUDO_KINDS


class Circuit(namedtuple("Circuit", ["num_qubits", "gates"])):
    __slots__ = ()

    def __new__(cls, num_qubits: int, gates: Sequence[Gate] = ()):
        num_qubits = int(num_qubits)
        if num_qubits < 1:
            raise DimensionMismatch(f"num_qubits must be >= 1, got {num_qubits}")
        gates = tuple(gates)
        for gate in gates:
            if max(gate.wires) >= num_qubits:
                raise DimensionMismatch(f"{gate.kind} on wires {gate.wires} exceeds {num_qubits} qubit(s)")
        return super().__new__(cls, num_qubits, gates)


def u3_matrix(theta: float, lam: float, phi: float) -> ComplexMatrix:
    """[[cos t/2, -e^{i lam} sin t/2], [e^{i phi} sin t/2, e^{i(lam+phi)} cos t/2]]"""
    c, s = np.cos(theta / 2.0), np.sin(theta / 2.0)
    return np.array([[c, -np.exp(1j * lam) * s],
                     [np.exp(1j * phi) * s, np.exp(1j * (lam + phi)) * c]], dtype=np.complex128)


def _single_qubit_matrix(kind: str, params: Sequence[float]) -> ComplexMatrix:
    if kind == "I":
        return np.eye(2, dtype=np.complex128)
    if kind == "X":
        return np.array([[0, 1], [1, 0]], dtype=np.complex128)
    if kind == "Y":
        return np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
    if kind == "Z":
        return np.array([[1, 0], [0, -1]], dtype=np.complex128)
    if kind == "H":
        return np.array([[1, 1], [1, -1]], dtype=np.complex128) / _SQRT2
    if kind == "S":
        return np.diag([1, 1j]).astype(np.complex128)
    if kind == "Sdg":
        return np.diag([1, -1j]).astype(np.complex128)
    if kind == "T":
        return np.diag([1, (1 + 1j) / _SQRT2]).astype(np.complex128)
    if kind == "Tdg":
        return np.diag([1, (1 - 1j) / _SQRT2]).astype(np.complex128)
    if kind == "RX":
        c, s = np.cos(params[0] / 2.0), np.sin(params[0] / 2.0)
        return np.array([[c, -1j * s], [-1j * s, c]], dtype=np.complex128)
    if kind == "RY":
        c, s = np.cos(params[0] / 2.0), np.sin(params[0] / 2.0)
        return np.array([[c, -s], [s, c]], dtype=np.complex128)
    if kind == "RZ":
        return np.diag([np.exp(-0.5j * params[0]), np.exp(0.5j * params[0])]).astype(np.complex128)
    if kind == "U1":
        return np.diag([1, np.exp(1j * params[0])]).astype(np.complex128)
    if kind == "U2":
        # U3(pi/2, lam, phi); the 1/sqrt(2) makes it unitary
        return u3_matrix(np.pi / 2.0, params[0], params[1])
    if kind == "U3":
        return u3_matrix(params[0], params[1], params[2])
    raise InvalidGate(f"{kind} is not a single-qubit kind")


def _controlled(target: ComplexMatrix) -> ComplexMatrix:
    # local bit 0 = control, bit 1 = target
    matrix = np.eye(4, dtype=np.complex128)
    matrix[np.ix_([1, 3], [1, 3])] = target
    return matrix


def gate_matrix(g: Gate) -> ComplexMatrix:
    """Matrix of ``g`` in the little-endian basis of its own wires."""
    if g.kind in PSEUDO_KINDS:
        return np.eye(2 ** len(g.wires), dtype=np.complex128)
    if g.kind in SINGLE_QUBIT_KINDS:
        return _single_qubit_matrix(g.kind, g.params)
    if g.kind == "CX":
        return _controlled(_single_qubit_matrix("X", ()))
    if g.kind == "CZ":
        return _controlled(_single_qubit_matrix("Z", ()))
    if g.kind == "CONTROLLED":
        return _controlled(_single_qubit_matrix(g.base, g.params))
    if g.kind == "SWAP":
        return np.eye(4, dtype=np.complex128)[[0, 2, 1, 3]]
    if g.kind == "TOFFOLI":
        # controls are local bits 0 and 1, target bit 2
        return np.eye(8, dtype=np.complex128)[[0, 1, 2, 7, 4, 5, 6, 3]]
    raise InvalidGate(f"no matrix for {g.kind}")


def _contract(tensor: np.ndarray, local: ComplexMatrix, axes: List[int]) -> np.ndarray:
    # axes[i] is the tensor axis of local qubit k-1-i
    k = len(axes)
    gate = np.asarray(local).reshape((2,) * (2 * k))
    moved = np.tensordot(gate, tensor, axes=(list(range(k, 2 * k)), axes))
    return np.moveaxis(moved, list(range(k)), axes)


def _row_axes(wires: Sequence[int], num_qubits: int) -> List[int]:
    return [num_qubits - 1 - q for q in reversed(wires)]


def apply_local_to_vector(vector: np.ndarray, local: ComplexMatrix, wires: Sequence[int],
                          num_qubits: int) -> np.ndarray:
    tensor = np.asarray(vector, dtype=np.complex128).reshape((2,) * num_qubits)
    tensor = _contract(tensor, local, _row_axes(wires, num_qubits))
    return tensor.reshape(-1)


def conjugate_local(matrix: np.ndarray, local: ComplexMatrix, wires: Sequence[int],
                    num_qubits: int) -> np.ndarray:
    """L rho L^dagger with L acting on ``wires``."""
    dim = 2 ** num_qubits
    tensor = np.asarray(matrix, dtype=np.complex128).reshape((2,) * (2 * num_qubits))
    rows = _row_axes(wires, num_qubits)
    tensor = _contract(tensor, local, rows)
    tensor = _contract(tensor, np.conj(local), [num_qubits + axis for axis in rows])
    return tensor.reshape(dim, dim)


def _check_dimension(circuit: Circuit, num_qubits: int):
    if circuit.num_qubits != num_qubits:
        raise DimensionMismatch(f"circuit acts on {circuit.num_qubits} qubit(s), state has {num_qubits}")


def apply(c: Circuit, input: StateVector) -> StateVector:
    _check_dimension(c, input.num_qubits)
    vector = np.asarray(input.amplitudes, dtype=np.complex128)
    for gate in c.gates:
        if gate.is_unitary_op:
            vector = apply_local_to_vector(vector, gate_matrix(gate), gate.wires, c.num_qubits)
    return state_vector(vector)


def apply_density(c: Circuit, input: DensityMatrix) -> DensityMatrix:
    _check_dimension(c, input.num_qubits)
    matrix = np.asarray(input.matrix, dtype=np.complex128)
    for gate in c.gates:
        if gate.is_unitary_op:
            matrix = conjugate_local(matrix, gate_matrix(gate), gate.wires, c.num_qubits)
    return validate(matrix)


def circuit_unitary(c: Circuit) -> ComplexMatrix:
    if c.num_qubits > MAX_UNITARY_QUBITS:
        raise DimensionMismatch(f"unitary of {c.num_qubits} qubits exceeds the {MAX_UNITARY_QUBITS}-qubit limit")
    n = c.num_qubits
    dim = 2 ** n
    tensor = np.eye(dim, dtype=np.complex128).reshape((2,) * (2 * n))
    for gate in c.gates:
        if gate.is_unitary_op:
            tensor = _contract(tensor, gate_matrix(gate), _row_axes(gate.wires, n))
    return tensor.reshape(dim, dim)


def random_circuit(num_qubits: int, num_gates: int, rng_seed) -> Circuit:
    """
    ``num_gates`` unitary gates, each kind drawn uniformly from the catalog entries
    whose arity fits ``num_qubits``; wires drawn without replacement and angles
    uniform in [0, 2pi). A CONTROLLED gate draws its base kind uniformly from the
    single-qubit kinds.
    """
    if num_qubits < 1 or num_gates < 0:
        raise DimensionMismatch(f"need num_qubits >= 1 and num_gates >= 0, got {num_qubits}, {num_gates}")
    rng = np.random.default_rng(rng_seed)
    kinds = [kind for kind in RANDOM_CATALOG if GATE_CATALOG[kind].arity <= num_qubits]
    gates = []
    for _ in range(num_gates):
        kind = kinds[int(rng.integers(len(kinds)))]
        arity = GATE_CATALOG[kind].arity
        wires = rng.choice(num_qubits, size=arity, replace=False)
        base = None
        num_params = GATE_CATALOG[kind].num_params
        if kind == "CONTROLLED":
            base = SINGLE_QUBIT_KINDS[int(rng.integers(len(SINGLE_QUBIT_KINDS)))]
            num_params = GATE_CATALOG[base].num_params
        params = rng.uniform(0.0, 2.0 * np.pi, size=num_params)
        gates.append(Gate(kind, params, wires, base))
    circuit = Circuit(num_qubits, gates)
    logging.debug(f"Random circuit on {num_qubits} qubit(s): {[gate.kind for gate in gates]}")
    return circuit


def werner_angles(p: WernerParams):
    """alpha = 2 arcsin(sqrt x), theta = arccos(-w)."""
    return 2.0 * np.arcsin(np.sqrt(p.x)), np.arccos(-p.w)


def werner_preparation_circuit(p: WernerParams, literal: bool = False) -> Circuit:
    """
    Two-qubit circuit U3_A (x) U3_B(theta,0,0), CX(B->A), CZ(B->A) with A = qubit 0
    and B = qubit 1.

    With ``literal=True`` A is rotated by U3(alpha,0,0), which prepares
    -(Z (x) Z) applied to the purification; its reduced state is Z rho Z, which
    differs from the Werner-like state only in the sign of the coherence. The default rotates A by
    U3(2pi - alpha, 0, 0) so the output equals ``werner_purification(p)``
    amplitude for amplitude.
    """
    alpha, theta = werner_angles(p)
    angle_a = alpha if literal else 2.0 * np.pi - alpha
    return Circuit(2, [Gate("U3", (angle_a, 0.0, 0.0), (0,)),
                       Gate("U3", (theta, 0.0, 0.0), (1,)),
                       Gate("CX", (), (1, 0)),
                       Gate("CZ", (), (1, 0))])


def gate_to_json(g: Gate) -> dict:
    record = {"kind": g.kind, "params": list(g.params), "wires": list(g.wires)}
    if g.base is not None:
        record["base"] = g.base
    return record


def gate_from_json(record: dict) -> Gate:
    try:
        return Gate(record["kind"], record.get("params", ()), record["wires"], record.get("base"))
    except (KeyError, TypeError) as e:
        raise InvalidGate(f"malformed gate record {record!r}") from e


def circuit_to_json(c: Circuit) -> dict:
    return {"num_qubits": c.num_qubits, "gates": [gate_to_json(gate) for gate in c.gates]}


def circuit_from_json(record: dict) -> Circuit:
    gates = [gate_from_json(gate) for gate in record.get("gates", [])]
    return Circuit(int(record["num_qubits"]), gates)


def circuit_to_json_lines(c: Circuit) -> List[dict]:
    """One record per gate, the form replayed by ``circuit_from_json_lines``."""
    return [gate_to_json(gate) for gate in c.gates]


def circuit_from_json_lines(records: Sequence[dict], num_qubits: int = None) -> Circuit:
    gates = [gate_from_json(record) for record in records]
    if num_qubits is None:
        num_qubits = max((max(gate.wires) for gate in gates), default=0) + 1
    return Circuit(num_qubits, gates)

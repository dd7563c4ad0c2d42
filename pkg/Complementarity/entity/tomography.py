"""
Pauli-basis state tomography: shot sampling in rotated bases, linear-inversion
reconstruction, projection onto the physical states and optional readout
mitigation.

Setting labels and bitstrings are written most significant qubit first, so the
rightmost character always belongs to qubit 0 and ``int(bits, 2)`` is the basis
index.
"""
import itertools
from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache
from typing import Dict, Mapping, Sequence

import numpy as np

from Complementarity.constant import SINGULAR_DETERMINANT_TOLERANCE
from Complementarity.entity.linalg import dagger, kron_all
from Complementarity.entity.noise_model import (NOISELESS, PAULI_MATRICES, NoiseParams, apply_readout_error,
                                                confusion_matrices)
from Complementarity.entity.quantum_state import DensityMatrix, validate
from Complementarity.exception import (DimensionMismatch, IncompleteSettings, InvalidParameter,
                                       SingularConfusionMatrix)
from Complementarity.logger import logging
from Complementarity.util.util import load_json_file, read_json_lines, save_json_file

TomographyRecord = namedtuple("TomographyRecord", ["basis_settings", "counts", "shots_per_setting",
                                                   "raw_estimate", "physical_estimate", "negativity_clipped"])

_HADAMARD = np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2)
_S_DAGGER = np.array([[1, 0], [0, -1j]], dtype=np.complex128)

# basis change applied before a computational-basis readout
_ROTATIONS = {
    "X": _HADAMARD,
    "Y": _HADAMARD @ _S_DAGGER,
    "Z": np.eye(2, dtype=np.complex128),
}


def pauli_settings(num_qubits: int) -> list:
    """All 3^n measurement settings in lexicographic order over 'XYZ'."""
    if num_qubits < 1:
        raise DimensionMismatch(f"num_qubits must be >= 1, got {num_qubits}")
    return ["".join(label) for label in itertools.product("XYZ", repeat=num_qubits)]


def _bitstring(index: int, num_qubits: int) -> str:
    return format(index, f"0{num_qubits}b")


def _check_setting(setting: str, num_qubits: int):
    if len(setting) != num_qubits or any(c not in _ROTATIONS for c in setting):
        raise DimensionMismatch(f"setting {setting!r} is not a {num_qubits}-qubit X/Y/Z label")


def _rotated_probabilities(rho: DensityMatrix, setting: str) -> np.ndarray:
    _check_setting(setting, rho.num_qubits)
    rotation = kron_all([_ROTATIONS[c] for c in setting])
    rotated = rotation @ np.asarray(rho.matrix) @ dagger(rotation)
    probabilities = np.clip(np.real(np.diag(rotated)), 0.0, None)
    return probabilities / probabilities.sum()


def exact_setting_probabilities(rho: DensityMatrix, setting: str) -> Dict[str, float]:
    """Outcome distribution of ``setting`` in the infinite-shot limit, every bitstring listed."""
    probabilities = _rotated_probabilities(rho, setting)
    return {_bitstring(i, rho.num_qubits): float(p) for i, p in enumerate(probabilities)}


def sample_measurement(rho: DensityMatrix, basis_settings: str, shots: int, noise: NoiseParams = NOISELESS,
                       rng_seed=None) -> Dict[str, int]:
    """
    Draws ``shots`` outcomes of ``rho`` measured in ``basis_settings`` and applies
    independent per-qubit readout flips. Only observed bitstrings are returned.
    """
    if int(shots) < 1:
        raise InvalidParameter(f"shots must be >= 1, got {shots}")
    rng = np.random.default_rng(rng_seed)
    num_qubits = rho.num_qubits
    probabilities = _rotated_probabilities(rho, basis_settings)
    outcomes = rng.choice(probabilities.size, size=int(shots), p=probabilities)

    if noise.has_readout_error:
        bits = (outcomes[:, None] >> np.arange(num_qubits)) & 1
        bits = apply_readout_error(bits, noise, rng)
        outcomes = bits @ (1 << np.arange(num_qubits))

    histogram = np.bincount(outcomes, minlength=probabilities.size)
    return {_bitstring(i, num_qubits): int(c) for i, c in enumerate(histogram) if c > 0}


def _num_qubits_of(counts: Mapping[str, float]) -> int:
    lengths = {len(bits) for bits in counts}
    if len(lengths) != 1:
        raise DimensionMismatch(f"bitstrings of mixed length {sorted(lengths)}")
    return lengths.pop()


def _distribution(counts: Mapping[str, float], num_qubits: int) -> np.ndarray:
    vector = np.zeros(2 ** num_qubits)
    for bits, value in counts.items():
        if len(bits) != num_qubits or set(bits) - {"0", "1"}:
            raise DimensionMismatch(f"bitstring {bits!r} is not a {num_qubits}-bit string")
        vector[int(bits, 2)] += float(value)
    return vector


@lru_cache(maxsize=None)
def _parity_signs(label: str) -> np.ndarray:
    num_qubits = len(label)
    mask = sum(1 << q for q in range(num_qubits) if label[num_qubits - 1 - q] != "I")
    parities = np.array([bin(i & mask).count("1") % 2 for i in range(2 ** num_qubits)])
    return 1.0 - 2.0 * parities


def estimate_expectation(counts: Mapping[str, float], pauli: str) -> float:
    """
    <P> from the counts of a setting that agrees with ``pauli`` on its
    non-identity positions. Quasi-counts from mitigation are accepted.
    """
    num_qubits = len(pauli)
    distribution = _distribution(counts, num_qubits)
    total = distribution.sum()
    if total == 0.0:
        raise IncompleteSettings("cannot estimate an expectation from zero shots")
    return float(np.dot(_parity_signs(pauli), distribution) / total)


def readout_mitigation(counts: Mapping[str, float], confusion_matrices: Sequence[np.ndarray]) -> Dict[str, float]:
    """
    Applies the inverse of the per-qubit confusion matrices (qubit 0 first) to the
    outcome histogram. The result keeps the total shot count and may hold
    negative quasi-counts.
    """
    num_qubits = _num_qubits_of(counts)
    if len(confusion_matrices) != num_qubits:
        raise DimensionMismatch(f"{len(confusion_matrices)} confusion matrices for {num_qubits} qubit(s)")
    inverses = []
    for qubit, matrix in enumerate(confusion_matrices):
        matrix = np.asarray(matrix, dtype=float)
        if matrix.shape != (2, 2):
            raise DimensionMismatch(f"confusion matrix of qubit {qubit} has shape {matrix.shape}")
        if abs(np.linalg.det(matrix)) < SINGULAR_DETERMINANT_TOLERANCE:
            raise SingularConfusionMatrix(f"confusion matrix of qubit {qubit} is singular")
        inverses.append(np.linalg.inv(matrix))
    inverse = np.real(kron_all(list(reversed(inverses))))
    corrected = inverse @ _distribution(counts, num_qubits)
    return {_bitstring(i, num_qubits): float(v) for i, v in enumerate(corrected) if v != 0.0}


def mitigated_expectation(counts: Mapping[str, float], confusion_matrices: Sequence[np.ndarray],
                          pauli: str) -> float:
    return estimate_expectation(readout_mitigation(counts, confusion_matrices), pauli)


@lru_cache(maxsize=None)
def pauli_string_matrix(label: str) -> np.ndarray:
    return kron_all([PAULI_MATRICES[c] for c in label])


def project_to_physical(raw: np.ndarray):
    """
    Closest density matrix to a unit-trace Hermitian estimate in the spectral
    sense: eigenvalues are sorted, the most negative ones zeroed while the
    accumulated deficit spread over the rest would still leave them negative,
    and the deficit is then shared equally by the survivors.
    Returns the projected state and the clipped negative mass.
    """
    matrix = np.asarray(raw, dtype=np.complex128)
    matrix = (matrix + dagger(matrix)) / 2
    matrix = matrix / np.real(np.trace(matrix))
    eigenvalues, eigenvectors = np.linalg.eigh(matrix)
    mu = eigenvalues[::-1]
    vectors = eigenvectors[:, ::-1]
    negativity = float(-np.sum(mu[mu < 0.0]))

    projected = np.zeros_like(mu)
    deficit = 0.0
    i = mu.size
    while i > 0 and mu[i - 1] + deficit / i < 0.0:
        deficit += mu[i - 1]
        i -= 1
    projected[:i] = mu[:i] + deficit / i
    physical = (vectors * projected) @ dagger(vectors)
    return validate((physical + dagger(physical)) / 2), negativity


def _check_records(records: Mapping[str, Mapping[str, float]]) -> int:
    if not records:
        raise IncompleteSettings("no tomography settings given")
    num_qubits = len(next(iter(records)))
    expected = set(pauli_settings(num_qubits))
    missing = sorted(expected - set(records))
    extra = sorted(set(records) - expected)
    if missing or extra:
        raise IncompleteSettings(f"settings missing={missing[:5]} unexpected={extra[:5]} "
                                 f"for {num_qubits} qubit(s)")
    totals = {setting: float(sum(counts.values())) for setting, counts in records.items()}
    reference = next(iter(totals.values()))
    if reference <= 0.0 or any(abs(t - reference) > 1e-9 * reference for t in totals.values()):
        raise IncompleteSettings(f"settings do not share one shot count: {sorted(set(totals.values()))[:5]}")
    return num_qubits


def reconstruct(records: Mapping[str, Mapping[str, float]], confusion_matrices: Sequence[np.ndarray] = None
                ) -> TomographyRecord:
    """
    Linear inversion rho = 2^-n sum_P <P> P over all 4^n Pauli strings, followed
    by ``project_to_physical``. ``records`` maps every 'XYZ' setting to its counts;
    exact probabilities may stand in for counts. Expectations of strings with
    identities are read from the setting with 'Z' in their place.
    """
    num_qubits = _check_records(records)
    if confusion_matrices is not None:
        estimates = {s: readout_mitigation(c, confusion_matrices) for s, c in records.items()}
    else:
        estimates = records

    dim = 2 ** num_qubits
    raw = np.zeros((dim, dim), dtype=np.complex128)
    for label in itertools.product("IXYZ", repeat=num_qubits):
        label = "".join(label)
        if set(label) == {"I"}:
            expectation = 1.0
        else:
            expectation = estimate_expectation(estimates[label.replace("I", "Z")], label)
        raw += expectation * pauli_string_matrix(label)
    raw /= dim

    physical, negativity = project_to_physical(raw)
    if negativity > 0.0:
        logging.info(f"Tomography projection clipped negative mass {negativity:.3e}")
    shots = int(round(sum(next(iter(records.values())).values())))
    return TomographyRecord(basis_settings=sorted(records), counts={s: dict(c) for s, c in records.items()},
                            shots_per_setting=shots, raw_estimate=raw, physical_estimate=physical,
                            negativity_clipped=negativity)


def run_state_tomography(rho: DensityMatrix, shots: int, noise: NoiseParams = NOISELESS, rng_seed=None,
                         mitigate_readout: bool = False, n_jobs: int = 1) -> TomographyRecord:
    """
    Samples every Pauli setting with its own child seed, in parallel when
    ``n_jobs`` > 1, and reconstructs once all settings have joined.
    """
    settings = pauli_settings(rho.num_qubits)
    if not isinstance(rng_seed, np.random.SeedSequence):
        rng_seed = np.random.SeedSequence(rng_seed)
    seeds = rng_seed.spawn(len(settings))
    with ThreadPoolExecutor(max_workers=max(1, int(n_jobs))) as executor:
        sampled = list(executor.map(lambda job: sample_measurement(rho, job[0], shots, noise, job[1]),
                                    zip(settings, seeds)))
    records = dict(zip(settings, sampled))
    matrices = confusion_matrices(noise, rho.num_qubits) if mitigate_readout else None
    return reconstruct(records, matrices)


def exact_tomography(rho: DensityMatrix) -> TomographyRecord:
    """Reconstruction from exact outcome probabilities of every setting."""
    records = {s: exact_setting_probabilities(rho, s) for s in pauli_settings(rho.num_qubits)}
    return reconstruct(records)


def save_counts_file(file_path: str, records: Mapping[str, Mapping[str, int]], shots: int):
    """Writes one {"setting", "counts", "shots"} object per setting as a JSON list."""
    payload = [{"setting": setting, "counts": {b: int(v) for b, v in counts.items()}, "shots": int(shots)}
               for setting, counts in records.items()]
    save_json_file(file_path, payload)


def load_counts_file(file_path: str) -> Dict[str, Dict[str, int]]:
    """
    Reads counts produced by ``save_counts_file`` or by an external backend: a
    JSON list, a single object or JSON lines of {"setting", "counts", "shots"}.
    """
    if file_path.endswith(".jsonl"):
        entries = read_json_lines(file_path)
    else:
        entries = load_json_file(file_path)
    if isinstance(entries, dict):
        entries = [entries]
    records = {}
    for entry in entries:
        try:
            setting, counts, shots = entry["setting"], entry["counts"], int(entry["shots"])
        except (KeyError, TypeError, ValueError) as e:
            raise IncompleteSettings(f"malformed counts entry in {file_path}: {e}") from e
        total = sum(int(v) for v in counts.values())
        if total != shots:
            raise IncompleteSettings(f"setting {setting} has {total} counts but declares {shots} shots")
        records[setting] = {bits: int(v) for bits, v in counts.items()}
    return records

"""
Coherence, predictability, correlation and purity quantifiers of a quanton,
together with the complete (CCR) and incomplete (ICR) complementarity relations.

All measures use the computational basis as reference basis and base-2
logarithms. Eigenvalues in [-1e-9, 0) are treated as zero; 0 log 0 = 0.

Complete relations, each an equality for every density matrix:
    P_l1 + C_l1 + W_l1 = d - 1
    P_hs + C_wy + W_wy = (d - 1)/d
    P_hs + C_hs + S_l  = (d - 1)/d
    P_vn + C_re + S_vn = log2 d
Dropping the correlation term turns each into the matching incomplete relation.
"""
from collections import namedtuple

import numpy as np

from Complementarity.entity.linalg import clipped_spectrum, mat_sqrt_psd, norm_hs_sq_offdiag, norm_l1_offdiag
from Complementarity.entity.quantum_state import DensityMatrix
from Complementarity.logger import logging

MEASURE_NAMES = ("C_l1", "C_wy", "C_hs", "C_re", "P_l1", "P_hs", "P_vn", "W_l1", "W_wy", "S_l", "S_vn")
PURITY_NAMES = ("purity_hs", "purity_vn", "purity_l1", "purity_wy")
CCR_NAMES = ("ccr_l1", "ccr_wy", "ccr_hs", "ccr_vn")
ICR_NAMES = ("icr_l1", "icr_wy", "icr_hs", "icr_vn")

# stable CSV column order
MEASURE_REPORT_COLUMNS = ("d_A",) + MEASURE_NAMES + PURITY_NAMES + CCR_NAMES + ICR_NAMES + ("duality_slack",)

MeasureReport = namedtuple("MeasureReport", ["d_A", "C_l1", "C_wy", "C_hs", "C_re", "P_l1", "P_hs", "P_vn",
                                             "W_l1", "W_wy", "S_l", "S_vn",
                                             "purity_hs", "purity_vn", "purity_l1", "purity_wy",
                                             "ccr_residuals", "icr_slacks", "duality_slack"])

PurityMeasures = namedtuple("PurityMeasures", ["purity_hs", "purity_vn", "purity_l1", "purity_wy"])


def _matrix(rho: DensityMatrix) -> np.ndarray:
    return np.asarray(rho.matrix, dtype=np.complex128)


def _dimension(rho: DensityMatrix) -> int:
    return _matrix(rho).shape[0]


def _populations(rho: DensityMatrix) -> np.ndarray:
    # validated states have populations >= -1e-9; clip them like the spectrum
    return np.clip(np.real(np.diag(_matrix(rho))), 0.0, None)


def _shannon(probabilities: np.ndarray) -> float:
    p = probabilities[probabilities > 0.0]
    return float(-np.sum(p * np.log2(p)))


def _offdiag_sqrt_population_sum(rho: DensityMatrix) -> float:
    root = np.sqrt(_populations(rho))
    return float(np.sum(np.outer(root, root)) - np.sum(root ** 2))


def coherence_l1(rho: DensityMatrix) -> float:
    return norm_l1_offdiag(_matrix(rho))


def coherence_wy(rho: DensityMatrix) -> float:
    """Sum of Wigner-Yanase skew informations over the reference basis projectors."""
    return norm_hs_sq_offdiag(mat_sqrt_psd(_matrix(rho)))


def coherence_hs(rho: DensityMatrix) -> float:
    return norm_hs_sq_offdiag(_matrix(rho))


def coherence_re(rho: DensityMatrix) -> float:
    """Relative entropy of coherence S(rho_diag) - S(rho)."""
    return _shannon(_populations(rho)) - vn_entropy(rho)


def predictability_l1(rho: DensityMatrix) -> float:
    return _dimension(rho) - 1 - _offdiag_sqrt_population_sum(rho)


def predictability_hs(rho: DensityMatrix) -> float:
    populations = _populations(rho)
    return float(np.sum(populations ** 2) - 1.0 / populations.size)


def predictability_vn(rho: DensityMatrix) -> float:
    return float(np.log2(_dimension(rho))) - _shannon(_populations(rho))


def correlation_w_l1(rho: DensityMatrix) -> float:
    return _offdiag_sqrt_population_sum(rho) - norm_l1_offdiag(_matrix(rho))


def correlation_w_wy(rho: DensityMatrix) -> float:
    root_diagonal = np.real(np.diag(mat_sqrt_psd(_matrix(rho))))
    return float(np.sum(root_diagonal ** 2 - _populations(rho) ** 2))


def linear_entropy(rho: DensityMatrix) -> float:
    matrix = _matrix(rho)
    return float(1.0 - np.real(np.sum(matrix * matrix.T)))


def vn_entropy(rho: DensityMatrix) -> float:
    return _shannon(clipped_spectrum(_matrix(rho)).eigenvalues)


def purity_measures(rho: DensityMatrix) -> PurityMeasures:
    d = _dimension(rho)
    return PurityMeasures(purity_hs=1.0 - linear_entropy(rho),
                          purity_vn=float(np.log2(d)) - vn_entropy(rho),
                          purity_l1=(d - 1) - correlation_w_l1(rho),
                          purity_wy=(d - 1) / d - correlation_w_wy(rho))


def complementarity_bounds(d: int):
    """Right-hand sides of the l1, wy, hs and vn relations."""
    return (d - 1.0, (d - 1.0) / d, (d - 1.0) / d, float(np.log2(d)))


def wave_particle_slack(rho: DensityMatrix) -> float:
    """
    1 - (P^2 + V^2) for a qubit with P^2 = 2 P_hs and V^2 = 2 C_hs, i.e. the
    squared Bloch-vector components along and orthogonal to the reference axis.
    NaN for d > 2, where this reading of the duality relation has no counterpart.
    """
    if _dimension(rho) != 2:
        return float("nan")
    return 1.0 - 2.0 * predictability_hs(rho) - 2.0 * coherence_hs(rho)


def report(rho: DensityMatrix, tolerance: float = 1e-10) -> MeasureReport:
    """
    Evaluates every measure once and assembles CCR residuals (sum - bound) and
    ICR slacks (bound - P - C). ``tolerance`` is the zero threshold used when the
    report is logged; the numbers are returned unrounded.
    """
    d = _dimension(rho)
    values = {
        "C_l1": coherence_l1(rho), "C_wy": coherence_wy(rho), "C_hs": coherence_hs(rho),
        "C_re": coherence_re(rho), "P_l1": predictability_l1(rho), "P_hs": predictability_hs(rho),
        "P_vn": predictability_vn(rho), "W_l1": correlation_w_l1(rho), "W_wy": correlation_w_wy(rho),
        "S_l": linear_entropy(rho), "S_vn": vn_entropy(rho),
    }
    bound_l1, bound_wy, bound_hs, bound_vn = complementarity_bounds(d)
    relations = ((values["P_l1"], values["C_l1"], values["W_l1"], bound_l1),
                 (values["P_hs"], values["C_wy"], values["W_wy"], bound_wy),
                 (values["P_hs"], values["C_hs"], values["S_l"], bound_hs),
                 (values["P_vn"], values["C_re"], values["S_vn"], bound_vn))
    ccr_residuals = tuple(p + c + w - bound for p, c, w, bound in relations)
    icr_slacks = tuple(bound - p - c for p, c, _, bound in relations)

    purity = PurityMeasures(purity_hs=1.0 - values["S_l"],
                            purity_vn=bound_vn - values["S_vn"],
                            purity_l1=bound_l1 - values["W_l1"],
                            purity_wy=bound_wy - values["W_wy"])
    duality_slack = 1.0 - 2.0 * values["P_hs"] - 2.0 * values["C_hs"] if d == 2 else float("nan")

    if max(abs(r) for r in ccr_residuals) > tolerance or min(icr_slacks) < -tolerance:
        logging.warning(f"Relation outside tolerance {tolerance}: ccr={ccr_residuals} icr={icr_slacks}")

    return MeasureReport(d_A=d, **values, **purity._asdict(),
                         ccr_residuals=ccr_residuals, icr_slacks=icr_slacks, duality_slack=duality_slack)


def report_to_row(measure_report: MeasureReport) -> dict:
    """Flattens a report into the documented CSV column order."""
    row = {"d_A": measure_report.d_A}
    for name in MEASURE_NAMES + PURITY_NAMES:
        row[name] = getattr(measure_report, name)
    row.update(zip(CCR_NAMES, measure_report.ccr_residuals))
    row.update(zip(ICR_NAMES, measure_report.icr_slacks))
    row["duality_slack"] = measure_report.duality_slack
    return row

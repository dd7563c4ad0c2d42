import itertools

import numpy as np
import pytest

from Complementarity.entity.measures import (MEASURE_NAMES, MEASURE_REPORT_COLUMNS, coherence_hs, coherence_l1,
                                             coherence_re, coherence_wy, complementarity_bounds, correlation_w_l1,
                                             correlation_w_wy, linear_entropy, predictability_hs,
                                             predictability_l1, predictability_vn, purity_measures, report,
                                             report_to_row, vn_entropy, wave_particle_slack)
from Complementarity.entity.quantum_state import (WernerParams, pure_density, random_density_matrix,
                                                  random_pure_state, reduced_state, validate, werner_state)

H_QUARTER = 0.8112781244591328
GRID = np.linspace(0.0, 1.0, 21)

MIXED = validate(np.eye(2) / 2)
GROUND = validate(np.diag([1.0, 0.0]))
PLUS = validate(np.full((2, 2), 0.5))


def _seeds(entropy, count):
    return np.random.SeedSequence(entropy).spawn(count)


def _random_reduced_pure_states(num_qubits, count, entropy):
    """Quanton = all qubits but the last of a random pure global state."""
    for seed in _seeds(entropy, count):
        psi = random_pure_state(num_qubits, seed)
        yield reduced_state(pure_density(psi), range(num_qubits - 1))


def _random_subsystem_reductions(num_qubits, count, entropy, sizes):
    """Every reduction of a random pure global state onto ``sizes``-qubit subsets."""
    for seed in _seeds(entropy, count):
        rho = pure_density(random_pure_state(num_qubits, seed))
        for size in sizes:
            for keep in itertools.combinations(range(num_qubits), size):
                yield keep, reduced_state(rho, keep)


class TestCoherence:

    def test_l1(self):
        assert coherence_l1(MIXED) == 0.0
        assert coherence_l1(PLUS) == pytest.approx(1.0)

    def test_l1_werner_closed_form(self):
        for x in GRID:
            for w in GRID:
                rho = werner_state(WernerParams(w=w, x=x))
                assert coherence_l1(rho) == pytest.approx(2 * w * np.sqrt(x * (1 - x)), abs=1e-12)

    def test_wigner_yanase(self):
        assert coherence_wy(validate(np.diag([0.3, 0.7]))) == pytest.approx(0.0, abs=1e-15)
        assert coherence_wy(PLUS) == pytest.approx(0.5, abs=1e-12)
        expected = (np.sqrt(0.9) - np.sqrt(0.1)) ** 2 / 2
        assert coherence_wy(werner_state(WernerParams(w=0.8, x=0.5))) == pytest.approx(expected, abs=1e-12)

    def test_hilbert_schmidt(self):
        assert coherence_hs(validate(np.diag([0.3, 0.7]))) == 0.0
        assert coherence_hs(PLUS) == pytest.approx(0.5)
        w, x = 0.7, 0.2
        expected = 2 * w ** 2 * x * (1 - x)
        assert coherence_hs(werner_state(WernerParams(w=w, x=x))) == pytest.approx(expected, abs=1e-14)

    def test_relative_entropy(self):
        assert coherence_re(validate(np.diag([0.3, 0.7]))) == pytest.approx(0.0, abs=1e-12)
        assert coherence_re(PLUS) == pytest.approx(1.0, abs=1e-12)
        assert coherence_re(werner_state(WernerParams(w=0.5, x=0.5))) == pytest.approx(1 - H_QUARTER, abs=1e-12)


class TestPredictability:

    def test_l1(self):
        assert predictability_l1(GROUND) == pytest.approx(1.0)
        assert predictability_l1(MIXED) == pytest.approx(0.0, abs=1e-15)
        w, x = 0.4, 0.9
        rho = werner_state(WernerParams(w=w, x=x))
        expected = 1 - 2 * np.sqrt((w * x + (1 - w) / 2) * (w * (1 - x) + (1 - w) / 2))
        assert predictability_l1(rho) == pytest.approx(expected, abs=1e-12)

    def test_hilbert_schmidt(self):
        assert predictability_hs(MIXED) == pytest.approx(0.0)
        assert predictability_hs(GROUND) == pytest.approx(0.5)
        assert predictability_hs(werner_state(WernerParams(w=0.6, x=0.9))) == pytest.approx(0.1152, abs=1e-14)

    def test_von_neumann(self):
        assert predictability_vn(MIXED) == pytest.approx(0.0)
        assert predictability_vn(GROUND) == pytest.approx(1.0)
        assert predictability_vn(validate(np.diag([0.9, 0.1]))) == pytest.approx(0.5310044064107188, abs=1e-12)


class TestCorrelation:

    def test_w_l1(self):
        assert correlation_w_l1(MIXED) == pytest.approx(1.0)
        assert correlation_w_l1(PLUS) == pytest.approx(0.0, abs=1e-15)
        for w in GRID:
            rho = werner_state(WernerParams(w=w, x=0.5))
            assert correlation_w_l1(rho) == pytest.approx(1 - w, abs=1e-12)

    def test_w_l1_vanishes_on_pure_states(self):
        for seed in _seeds(1, 50):
            assert abs(correlation_w_l1(pure_density(random_pure_state(2, seed)))) < 1e-10

    def test_w_wy(self):
        assert correlation_w_wy(PLUS) == pytest.approx(0.0, abs=1e-12)
        assert correlation_w_wy(MIXED) == pytest.approx(0.5, abs=1e-12)

    def test_entropies(self):
        assert linear_entropy(PLUS) == pytest.approx(0.0, abs=1e-15)
        assert vn_entropy(PLUS) == pytest.approx(0.0, abs=1e-12)
        assert linear_entropy(MIXED) == pytest.approx(0.5)
        assert vn_entropy(MIXED) == pytest.approx(1.0)
        rho = werner_state(WernerParams(w=0.5, x=0.3))
        assert linear_entropy(rho) == pytest.approx(0.375, abs=1e-14)
        assert vn_entropy(rho) == pytest.approx(H_QUARTER, abs=1e-12)

    def test_wy_relation_closes_on_reduced_pure_states(self):
        for rho in _random_reduced_pure_states(2, 50, 2):
            total = predictability_hs(rho) + coherence_wy(rho) + correlation_w_wy(rho)
            assert total == pytest.approx(0.5, abs=1e-12)


class TestPurityMeasures:

    def test_pure_state(self):
        np.testing.assert_allclose(purity_measures(PLUS), (1.0, 1.0, 1.0, 0.5), atol=1e-12)

    def test_maximally_mixed(self):
        np.testing.assert_allclose(purity_measures(MIXED), (0.5, 0.0, 0.0, 0.0), atol=1e-12)

    @pytest.mark.parametrize("num_qubits", [1, 2, 3])
    def test_purity_identities(self, num_qubits):
        d = 2 ** num_qubits
        for seed in _seeds(num_qubits, 100):
            rho = random_density_matrix(num_qubits, seed)
            purity = purity_measures(rho)
            assert purity.purity_hs == pytest.approx(predictability_hs(rho) + coherence_hs(rho) + 1 / d, abs=1e-12)
            assert purity.purity_vn == pytest.approx(predictability_vn(rho) + coherence_re(rho), abs=1e-12)


class TestReport:

    def test_ground_state_saturates_every_relation(self):
        measure_report = report(GROUND)
        np.testing.assert_allclose(measure_report.ccr_residuals, 0.0, atol=1e-12)
        np.testing.assert_allclose(measure_report.icr_slacks, 0.0, atol=1e-12)

    def test_werner_states_close_every_relation(self):
        for x in GRID:
            for w in GRID:
                measure_report = report(werner_state(WernerParams(w=w, x=x)))
                np.testing.assert_allclose(measure_report.ccr_residuals, 0.0, atol=1e-10)

    @pytest.mark.parametrize("num_qubits", [2, 3, 4])
    def test_complete_relations_on_reduced_pure_states(self, num_qubits):
        for rho in _random_reduced_pure_states(num_qubits, 1000, 10 + num_qubits):
            assert max(abs(r) for r in report(rho).ccr_residuals) < 1e-9

    @pytest.mark.parametrize("num_qubits", [3, 4])
    def test_complete_relations_on_one_and_two_qubit_reductions(self, num_qubits):
        for keep, rho in _random_subsystem_reductions(num_qubits, 200, 40 + num_qubits, sizes=(1, 2)):
            residuals = report(rho).ccr_residuals
            assert max(abs(r) for r in residuals) < 1e-9, keep

    @pytest.mark.parametrize("num_qubits", [1, 2, 3])
    def test_incomplete_relations_on_mixed_states(self, num_qubits):
        for seed in _seeds(20 + num_qubits, 1000):
            measure_report = report(random_density_matrix(num_qubits, seed))
            assert min(measure_report.icr_slacks) >= -1e-10
            np.testing.assert_allclose(measure_report.ccr_residuals, 0.0, atol=1e-9)

    def test_measures_are_non_negative(self):
        for num_qubits in (1, 2, 3):
            for seed in _seeds(30 + num_qubits, 100):
                measure_report = report(random_density_matrix(num_qubits, seed))
                assert min(getattr(measure_report, name) for name in MEASURE_NAMES) >= -1e-10

    def test_coherences_vanish_on_diagonal_states(self, rng):
        for _ in range(50):
            populations = rng.dirichlet(np.ones(4))
            measure_report = report(validate(np.diag(populations)))
            for name in ("C_l1", "C_wy", "C_hs", "C_re"):
                assert abs(getattr(measure_report, name)) < 1e-12

    def test_diagonal_phases_leave_measures_unchanged(self, rng):
        for seed in _seeds(40, 20):
            rho = random_density_matrix(2, seed)
            phases = np.diag(np.exp(1j * rng.uniform(0, 2 * np.pi, 4)))
            rotated = validate(phases @ rho.matrix @ phases.conj().T)
            before, after = report(rho), report(rotated)
            for name in MEASURE_NAMES:
                assert getattr(after, name) == pytest.approx(getattr(before, name), abs=1e-10)

    def test_depolarizing_the_werner_family(self):
        for x in GRID:
            reports = [report(werner_state(WernerParams(w=w, x=x))) for w in GRID[::-1]]
            c_l1 = np.array([r.C_l1 for r in reports])
            p_l1 = np.array([r.P_l1 for r in reports])
            w_l1 = np.array([r.W_l1 for r in reports])
            assert np.all(np.diff(c_l1) <= 1e-12)
            assert np.all(np.diff(p_l1) <= 1e-12)
            assert np.all(np.diff(w_l1) >= -1e-12)

    def test_wy_and_hs_coherence_coincide_on_pure_qubits(self):
        for seed in _seeds(50, 100):
            rho = pure_density(random_pure_state(1, seed))
            assert abs(coherence_wy(rho) - coherence_hs(rho)) < 1e-10

    def test_row_follows_column_order(self):
        row = report_to_row(report(random_density_matrix(2, 3)))
        assert tuple(row) == MEASURE_REPORT_COLUMNS
        assert row["d_A"] == 4


class TestWaveParticleSlack:

    def test_qubits_satisfy_the_duality_inequality(self):
        for seed in _seeds(60, 200):
            assert wave_particle_slack(random_density_matrix(1, seed)) >= -1e-12

    def test_pure_qubit_saturates(self):
        assert wave_particle_slack(PLUS) == pytest.approx(0.0, abs=1e-12)
        assert report(PLUS).duality_slack == pytest.approx(0.0, abs=1e-12)

    def test_undefined_beyond_qubits(self):
        assert np.isnan(wave_particle_slack(random_density_matrix(2, 1)))
        assert np.isnan(report(random_density_matrix(2, 1)).duality_slack)


def test_bounds():
    assert complementarity_bounds(2) == (1.0, 0.5, 0.5, 1.0)
    assert complementarity_bounds(8) == (7.0, 0.875, 0.875, 3.0)

import json
import os

import pytest

from Complementarity.config.configuration import Configuration
from Complementarity.constant import *
from Complementarity.entity.noise_model import NoiseParams
from Complementarity.exception import CCRException, ConfigError, find_cause


@pytest.fixture
def config(tmp_workdir):
    return Configuration()


class TestDefaults:

    def test_werner_sweep(self, config):
        run_config = config.get_run_config(EXPERIMENT_WERNER_SWEEP)
        assert run_config.grid == 21
        assert run_config.shots == DEFAULT_SHOTS
        assert run_config.mode == MODE_EXACT
        assert run_config.noise_name == NOISE_OFF
        assert run_config.noise == NoiseParams()
        assert run_config.seed == 42
        assert run_config.dimension is None
        assert run_config.repetitions == 3

    @pytest.mark.parametrize("dimension, num_states, num_gates", [(2, 100, 5), (4, 150, 4), (8, 200, 4)])
    def test_dimension_menu(self, tmp_workdir, dimension, num_states, num_gates):
        run_config = Configuration(overrides={RUN_DIMENSION_KEY: dimension}).get_run_config(EXPERIMENT_RANDOM_STATES)
        assert (run_config.dimension, run_config.num_states, run_config.num_gates) == \
            (dimension, num_states, num_gates)
        assert run_config.grid is None
        assert run_config.repetitions == 1

    def test_stage_paths_live_under_the_artifact_dir(self, config, tmp_workdir):
        assert config.pipeline_config.artifact_dir == os.path.join(str(tmp_workdir), "ccr_lab", "artifact")
        assert config.pipeline_config.n_jobs == 1
        tomography_config = config.get_tomography_config()
        assert tomography_config.records_file_path.startswith(config.pipeline_config.artifact_dir)
        assert not tomography_config.readout_mitigation
        dataset_file_path = config.get_measure_evaluation_config("werner_sweep").dataset_file_path
        assert dataset_file_path.endswith(os.path.join(config.time_stamp, "werner_sweep_dataset.csv"))

    def test_tolerances(self, config):
        verification_config = config.get_verification_config()
        assert verification_config.exact_tolerance == 1e-9
        assert verification_config.sampled_tolerance == 0.1


class TestOverrides:

    def test_run_values(self, tmp_workdir):
        config = Configuration(overrides={RUN_GRID_KEY: 5, RUN_SHOTS_KEY: 100, RUN_MODE_KEY: MODE_SAMPLED,
                                          RUN_NOISE_KEY: NOISE_DEFAULT, RUN_SEED_KEY: 7, RUN_DIMENSION_KEY: None})
        run_config = config.get_run_config(EXPERIMENT_WERNER_SWEEP)
        assert (run_config.grid, run_config.shots, run_config.mode, run_config.seed) == (5, 100, MODE_SAMPLED, 7)
        assert run_config.noise.depolarizing_p == 0.05
        assert run_config.noise.readout_for(0) == (0.02, 0.02)

    def test_explicit_counts_beat_the_menu(self, tmp_workdir):
        config = Configuration(overrides={RUN_DIMENSION_KEY: 8, RUN_NUM_STATES_KEY: 3, RUN_NUM_GATES_KEY: 2})
        run_config = config.get_run_config(EXPERIMENT_RANDOM_STATES)
        assert (run_config.num_states, run_config.num_gates) == (3, 2)

    def test_zero_gates_is_allowed(self, tmp_workdir):
        config = Configuration(overrides={RUN_DIMENSION_KEY: 4, RUN_NUM_GATES_KEY: 0})
        assert config.get_run_config(EXPERIMENT_RANDOM_STATES).num_gates == 0

    def test_repetitions(self, tmp_workdir):
        config = Configuration(overrides={RUN_REPETITIONS_KEY: 5})
        assert config.get_run_config(EXPERIMENT_WERNER_SWEEP).repetitions == 5
        assert config.get_run_config(EXPERIMENT_RANDOM_STATES).repetitions == 5

    def test_out_places_companion_files_beside_the_dataset(self, tmp_workdir):
        out = str(tmp_workdir / "runs" / "d8.csv")
        config = Configuration(overrides={OVERRIDE_OUT_KEY: out})
        measure_evaluation_config = config.get_measure_evaluation_config("random_states_d8")
        assert measure_evaluation_config.dataset_file_path == out
        assert measure_evaluation_config.summary_file_path == str(tmp_workdir / "runs" / "d8_summary.csv")
        assert config.get_state_preparation_config("random_states_d8").circuits_file_path == \
            str(tmp_workdir / "runs" / "d8_circuits.jsonl")

    def test_tolerance_applies_to_both_modes(self, tmp_workdir):
        verification_config = Configuration(overrides={OVERRIDE_TOLERANCE_KEY: 0.5}).get_verification_config()
        assert verification_config.exact_tolerance == verification_config.sampled_tolerance == 0.5

    def test_workers_and_mitigation(self, tmp_workdir):
        config = Configuration(overrides={PIPELINE_N_JOBS_KEY: 4, TOMOGRAPHY_READOUT_MITIGATION_KEY: True})
        assert config.pipeline_config.n_jobs == 4
        assert config.get_tomography_config().readout_mitigation


class TestConfigFile:

    def test_json_file_is_merged_over_defaults(self, tmp_workdir):
        file_path = tmp_workdir / "run.json"
        file_path.write_text(json.dumps({
            "werner_sweep_config": {"grid": 7, "mode": "sampled"},
            "random_states_config": {"dimensions": {"4": {"num_states": 3}}},
        }))
        config = Configuration(config_file_path=str(file_path))
        werner = config.get_run_config(EXPERIMENT_WERNER_SWEEP)
        assert (werner.grid, werner.mode, werner.seed) == (7, MODE_SAMPLED, 42)
        random_states = Configuration(config_file_path=str(file_path), overrides={RUN_DIMENSION_KEY: 4}) \
            .get_run_config(EXPERIMENT_RANDOM_STATES)
        assert (random_states.num_states, random_states.num_gates) == (3, 4)

    def test_flags_beat_the_file(self, tmp_workdir):
        file_path = tmp_workdir / "run.yaml"
        file_path.write_text("werner_sweep_config:\n  grid: 7\n")
        config = Configuration(config_file_path=str(file_path), overrides={RUN_GRID_KEY: 3})
        assert config.get_run_config(EXPERIMENT_WERNER_SWEEP).grid == 3

    def test_missing_file(self, tmp_workdir):
        with pytest.raises(CCRException) as error:
            Configuration(config_file_path=str(tmp_workdir / "absent.json"))
        assert find_cause(error.value, ConfigError) is not None

    def test_file_must_hold_a_mapping(self, tmp_workdir):
        file_path = tmp_workdir / "list.json"
        file_path.write_text("[1, 2]")
        with pytest.raises(CCRException) as error:
            Configuration(config_file_path=str(file_path))
        assert find_cause(error.value, ConfigError) is not None


class TestValidation:

    @pytest.mark.parametrize("experiment, overrides", [
        (EXPERIMENT_WERNER_SWEEP, {RUN_GRID_KEY: 1}),
        (EXPERIMENT_WERNER_SWEEP, {RUN_MODE_KEY: "hardware"}),
        (EXPERIMENT_WERNER_SWEEP, {RUN_SHOTS_KEY: 0}),
        (EXPERIMENT_WERNER_SWEEP, {RUN_NOISE_KEY: "no_such_chip"}),
        (EXPERIMENT_RANDOM_STATES, {RUN_DIMENSION_KEY: 3}),
        (EXPERIMENT_RANDOM_STATES, {RUN_NUM_STATES_KEY: 0}),
        (EXPERIMENT_RANDOM_STATES, {RUN_NUM_GATES_KEY: -1}),
        (EXPERIMENT_WERNER_SWEEP, {RUN_REPETITIONS_KEY: 0}),
        ("bell_test", {}),
    ])
    def test_malformed_runs(self, tmp_workdir, experiment, overrides):
        with pytest.raises(ConfigError):
            Configuration(overrides=overrides).get_run_config(experiment)

    def test_negative_tolerance(self, tmp_workdir):
        with pytest.raises(ConfigError):
            Configuration(overrides={OVERRIDE_TOLERANCE_KEY: -1.0}).get_verification_config()


class TestNoisePresets:

    def test_off_is_noiseless(self, config):
        assert config.get_noise_params(NOISE_OFF) == NoiseParams()

    def test_calibration_preset(self, config):
        noise = config.get_noise_params("yorktown_d4")
        assert noise.depolarizing_p == 0.0
        assert noise.multi_qubit_gate_error == pytest.approx(1.7433e-2)
        assert noise.readout_for(2) == (2.35e-2, 2.35e-2)
        assert noise.metadata["chip"] == "yorktown"

    def test_every_preset_loads(self, config):
        for name in config.config_info[NOISE_PRESETS_KEY]:
            assert isinstance(config.get_noise_params(name), NoiseParams)

import copy
import os
import sys

from Complementarity.constant import *
from Complementarity.entity.config_entity import (MeasureEvaluationConfig, PipelineConfig, PlotExportConfig,
                                                  RunConfig, StatePreparationConfig, TomographyConfig,
                                                  VerificationConfig)
from Complementarity.entity.noise_model import NoiseParams, noise_params_from_dict
from Complementarity.exception import CCRException, ConfigError
from Complementarity.logger import logging
from Complementarity.util.util import read_yaml_file


def _merge(base: dict, update: dict) -> dict:
    merged = copy.deepcopy(base)
    for key, value in (update or {}).items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def _first_set(*values):
    return next(value for value in values if value is not None)


def default_config_file_path() -> str:
    working_dir_path = os.path.join(os.getcwd(), CONFIG_DIR, CONFIG_FILE_NAME)
    if os.path.exists(working_dir_path):
        return working_dir_path
    return PACKAGE_CONFIG_FILE_PATH


class Configuration:
    """
    Run settings resolved in three layers: the default config.yaml, an optional
    user file (YAML or JSON) merged over it, and command-line ``overrides``.
    """

    def __init__(self,
                 config_file_path: str = None,
                 current_time_stamp: str = CURRENT_TIME_STAMP,
                 overrides: dict = None
                 ) -> None:
        try:
            default_path = default_config_file_path()
            config_info = read_yaml_file(file_path=default_path) if os.path.exists(default_path) else {}
            if config_file_path is not None:
                if not os.path.exists(config_file_path):
                    raise ConfigError(f"config file {config_file_path} does not exist")
                user_info = read_yaml_file(file_path=config_file_path)
                if not isinstance(user_info, dict):
                    raise ConfigError(f"config file {config_file_path} does not hold a mapping")
                config_info = _merge(config_info or {}, user_info)
            self.config_info = config_info or {}
            self.overrides = {key: value for key, value in (overrides or {}).items() if value is not None}
            self.time_stamp = current_time_stamp
            self.pipeline_config = self.get_pipeline_config()
        except Exception as e:
            raise CCRException(e, sys) from e

    def _section(self, key: str) -> dict:
        section = self.config_info.get(key)
        if not isinstance(section, dict):
            raise ConfigError(f"config section '{key}' is missing")
        return section

    def _stage_dir(self, stage_dir_name: str) -> str:
        return os.path.join(self.pipeline_config.artifact_dir, stage_dir_name, self.time_stamp)

    def _out_file_path(self, suffix: str):
        out = self.overrides.get(OVERRIDE_OUT_KEY)
        if out is None:
            return None
        return os.path.splitext(out)[0] + suffix

    def get_pipeline_config(self) -> PipelineConfig:
        try:
            pipeline_config_info = self._section(PIPELINE_CONFIG_KEY)
            pipeline_name = pipeline_config_info[PIPELINE_NAME_KEY]
            artifact_dir = os.path.join(os.getcwd(), pipeline_name,
                                        pipeline_config_info[PIPELINE_ARTIFACT_DIR_KEY])
            n_jobs = int(self.overrides.get(PIPELINE_N_JOBS_KEY, pipeline_config_info.get(PIPELINE_N_JOBS_KEY, 1)))
            if n_jobs < 1:
                raise ConfigError(f"n_jobs must be >= 1, got {n_jobs}")

            pipeline_config = PipelineConfig(pipeline_name=pipeline_name, artifact_dir=artifact_dir, n_jobs=n_jobs)
            logging.info(f"Pipeline config: {pipeline_config}")
            return pipeline_config
        except ConfigError:
            raise
        except Exception as e:
            raise ConfigError(e, sys) from e

    def get_noise_params(self, name: str) -> NoiseParams:
        try:
            presets = self.config_info.get(NOISE_PRESETS_KEY) or {}
            if name == NOISE_OFF and name not in presets:
                return NoiseParams()
            if name not in presets:
                raise ConfigError(f"unknown noise preset '{name}', expected one of {sorted(presets)}")
            noise = noise_params_from_dict(presets[name])
            logging.info(f"Noise preset [{name}]: {noise}")
            return noise
        except ConfigError:
            raise
        except Exception as e:
            raise ConfigError(e, sys) from e

    def get_run_config(self, experiment: str) -> RunConfig:
        """
        Resolves the run of ``experiment``. For the random-state study the
        dimension picks num_states and num_gates from the dimension menu unless
        they are set explicitly.
        """
        try:
            if experiment not in EXPERIMENTS:
                raise ConfigError(f"unknown experiment '{experiment}', expected one of {EXPERIMENTS}")
            section_key = WERNER_SWEEP_CONFIG_KEY if experiment == EXPERIMENT_WERNER_SWEEP else RANDOM_STATES_CONFIG_KEY
            run_info = dict(self._section(section_key))
            run_info.pop(RUN_DIMENSIONS_KEY, None)
            for key in (RUN_GRID_KEY, RUN_SHOTS_KEY, RUN_MODE_KEY, RUN_NOISE_KEY, RUN_SEED_KEY,
                        RUN_DIMENSION_KEY, RUN_NUM_STATES_KEY, RUN_NUM_GATES_KEY, RUN_REPETITIONS_KEY):
                if key in self.overrides:
                    run_info[key] = self.overrides[key]

            grid = dimension = num_states = num_gates = None
            if experiment == EXPERIMENT_WERNER_SWEEP:
                grid = int(run_info.get(RUN_GRID_KEY, 21))
                if grid < 2:
                    raise ConfigError(f"grid must have at least 2 steps, got {grid}")
            else:
                dimension = int(run_info.get(RUN_DIMENSION_KEY, 2))
                if dimension not in SUPPORTED_DIMENSIONS:
                    raise ConfigError(f"dimension {dimension} is not one of {SUPPORTED_DIMENSIONS}")
                menus = self._section(RANDOM_STATES_CONFIG_KEY).get(RUN_DIMENSIONS_KEY) or {}
                # JSON files carry the menu keys as strings; those come from the user file and win
                menu = {**(menus.get(dimension) or {}), **(menus.get(str(dimension)) or {})}
                num_states = int(_first_set(run_info.get(RUN_NUM_STATES_KEY), menu.get(RUN_NUM_STATES_KEY), 0))
                num_gates = _first_set(run_info.get(RUN_NUM_GATES_KEY), menu.get(RUN_NUM_GATES_KEY), -1)
                if num_states < 1:
                    raise ConfigError(f"num_states must be >= 1, got {num_states}")
                # zero gates leaves every state at |0...0>
                if int(num_gates) < 0:
                    raise ConfigError(f"num_gates must be set and >= 0 for dimension {dimension}, got {num_gates}")
                num_gates = int(num_gates)

            mode = str(run_info.get(RUN_MODE_KEY, MODE_EXACT))
            if mode not in MODES:
                raise ConfigError(f"mode '{mode}' is not one of {MODES}")
            tomography_info = self.config_info.get(TOMOGRAPHY_CONFIG_KEY) or {}
            shots = int(run_info.get(RUN_SHOTS_KEY, tomography_info.get(TOMOGRAPHY_SHOTS_KEY, DEFAULT_SHOTS)))
            if shots < 1:
                raise ConfigError(f"shots must be >= 1, got {shots}")
            noise_name = run_info.get(RUN_NOISE_KEY, NOISE_OFF)
            # YAML 1.1 reads a bare `off` as False
            noise_name = NOISE_OFF if noise_name is False else str(noise_name)
            repetitions = int(run_info.get(RUN_REPETITIONS_KEY, 1))
            if repetitions < 1:
                raise ConfigError(f"repetitions must be >= 1, got {repetitions}")

            run_config = RunConfig(experiment=experiment, mode=mode, grid=grid, dimension=dimension,
                                   num_states=num_states, num_gates=num_gates, shots=shots, repetitions=repetitions,
                                   noise_name=noise_name, noise=self.get_noise_params(noise_name),
                                   seed=int(run_info.get(RUN_SEED_KEY, 0)))
            logging.info(f"Run config: {run_config}")
            return run_config
        except ConfigError:
            raise
        except Exception as e:
            raise ConfigError(e, sys) from e

    def get_state_preparation_config(self, run_label: str) -> StatePreparationConfig:
        try:
            circuits_file_path = self._out_file_path(CIRCUITS_FILE_SUFFIX) or os.path.join(
                self._stage_dir(STATE_PREPARATION_ARTIFACT_DIR), run_label + CIRCUITS_FILE_SUFFIX)
            state_preparation_config = StatePreparationConfig(circuits_file_path=circuits_file_path)
            logging.info(f"State preparation config: {state_preparation_config}")
            return state_preparation_config
        except Exception as e:
            raise CCRException(e, sys) from e

    def get_tomography_config(self) -> TomographyConfig:
        try:
            tomography_config_info = self.config_info.get(TOMOGRAPHY_CONFIG_KEY) or {}
            records_file_path = os.path.join(self._stage_dir(STATE_TOMOGRAPHY_ARTIFACT_DIR),
                                             TOMOGRAPHY_RECORDS_FILE_NAME)
            readout_mitigation = self.overrides.get(TOMOGRAPHY_READOUT_MITIGATION_KEY,
                                                    tomography_config_info.get(TOMOGRAPHY_READOUT_MITIGATION_KEY,
                                                                               False))
            tomography_config = TomographyConfig(
                readout_mitigation=bool(readout_mitigation),
                records_file_path=records_file_path)
            logging.info(f"Tomography config: {tomography_config}")
            return tomography_config
        except Exception as e:
            raise ConfigError(e, sys) from e

    def get_measure_evaluation_config(self, run_label: str) -> MeasureEvaluationConfig:
        try:
            out = self.overrides.get(OVERRIDE_OUT_KEY)
            stage_dir = self._stage_dir(MEASURE_EVALUATION_ARTIFACT_DIR)
            dataset_file_path = out or os.path.join(stage_dir, f"{run_label}_{DATASET_FILE_NAME}")
            summary_file_path = self._out_file_path(SUMMARY_FILE_SUFFIX) or os.path.join(
                stage_dir, run_label + SUMMARY_FILE_SUFFIX)
            measure_evaluation_config = MeasureEvaluationConfig(dataset_file_path=dataset_file_path,
                                                                summary_file_path=summary_file_path)
            logging.info(f"Measure evaluation config: {measure_evaluation_config}")
            return measure_evaluation_config
        except Exception as e:
            raise CCRException(e, sys) from e

    def get_verification_config(self) -> VerificationConfig:
        try:
            verification_config_info = self.config_info.get(VERIFICATION_CONFIG_KEY) or {}
            exact_tolerance = float(verification_config_info.get(VERIFICATION_EXACT_TOLERANCE_KEY, 1e-9))
            sampled_tolerance = float(verification_config_info.get(VERIFICATION_SAMPLED_TOLERANCE_KEY, 0.1))
            tolerance = self.overrides.get(OVERRIDE_TOLERANCE_KEY)
            if tolerance is not None:
                exact_tolerance = sampled_tolerance = float(tolerance)
            if exact_tolerance < 0 or sampled_tolerance < 0:
                raise ConfigError("verification tolerances must be non-negative")
            verification_config = VerificationConfig(
                exact_tolerance=exact_tolerance, sampled_tolerance=sampled_tolerance,
                report_file_path=os.path.join(self._stage_dir(RELATION_VERIFICATION_ARTIFACT_DIR),
                                              VERIFICATION_REPORT_FILE_NAME))
            logging.info(f"Verification config: {verification_config}")
            return verification_config
        except ConfigError:
            raise
        except Exception as e:
            raise ConfigError(e, sys) from e

    def get_plot_export_config(self, plot_dir: str = None) -> PlotExportConfig:
        plot_export_config = PlotExportConfig(
            plot_dir=plot_dir or os.path.join(self.pipeline_config.artifact_dir, PLOT_DIR_NAME, self.time_stamp))
        logging.info(f"Plot export config: {plot_export_config}")
        return plot_export_config

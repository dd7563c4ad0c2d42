import os
import sys
import uuid
from collections import namedtuple
from datetime import datetime
from threading import Thread

import pandas as pd

from Complementarity.component.measure_evaluation import MeasureEvaluation
from Complementarity.component.relation_verification import RelationVerification, verify
from Complementarity.component.state_preparation import StatePreparation
from Complementarity.component.state_tomography import StateTomography
from Complementarity.config.configuration import Configuration
from Complementarity.constant import (EXPERIMENT_DIR_NAME, EXPERIMENT_FILE_NAME, EXPERIMENT_RANDOM_STATES,
                                      EXPERIMENT_WERNER_SWEEP, MODE_EXACT)
from Complementarity.entity.artifact_entity import (MeasureEvaluationArtifact, StatePreparationArtifact,
                                                    StateTomographyArtifact, VerificationArtifact)
from Complementarity.entity.config_entity import RunConfig
from Complementarity.exception import CCRException
from Complementarity.logger import logging
from Complementarity.util.util import read_dataframe

Experiment = namedtuple("Experiment", ["experiment_id", "initialization_timestamp", "artifact_time_stamp",
                                       "running_status", "start_time", "stop_time", "execution_time", "message",
                                       "experiment_file_path", "run_label", "mode", "noise", "dataset_file_path",
                                       "total_violations", "is_passed"])


def run_label(run_config: RunConfig) -> str:
    if run_config.experiment == EXPERIMENT_RANDOM_STATES:
        return f"{run_config.experiment}_d{run_config.dimension}"
    return run_config.experiment


class Pipeline(Thread):
    """
    One experiment run: state preparation, tomography (sampled mode only),
    measure evaluation and relation verification. Every run is appended to the
    experiment history CSV under the artifact directory.
    """
    experiment: Experiment = Experiment(*([None] * 15))
    experiment_file_path = None

    def __init__(self, config: Configuration, run_config: RunConfig) -> None:
        try:
            os.makedirs(config.pipeline_config.artifact_dir, exist_ok=True)
            Pipeline.experiment_file_path = os.path.join(config.pipeline_config.artifact_dir, EXPERIMENT_DIR_NAME,
                                                         EXPERIMENT_FILE_NAME)
            super().__init__(daemon=False, name="pipeline")
            self.config = config
            self.run_config = run_config
            self.run_label = run_label(run_config)
            self.n_jobs = config.pipeline_config.n_jobs
            self.state_tomography_artifact = None
            self.measure_evaluation_artifact = None
            self.verification_artifact = None
        except Exception as e:
            raise CCRException(e, sys) from e

    def get_tolerance(self) -> float:
        verification_config = self.config.get_verification_config()
        if self.run_config.mode == MODE_EXACT:
            return verification_config.exact_tolerance
        return verification_config.sampled_tolerance

    def start_state_preparation(self) -> StatePreparationArtifact:
        try:
            state_preparation = StatePreparation(
                run_config=self.run_config,
                state_preparation_config=self.config.get_state_preparation_config(self.run_label),
                n_jobs=self.n_jobs)
            return state_preparation.initiate_state_preparation()
        except Exception as e:
            raise CCRException(e, sys) from e

    def start_state_tomography(self, state_preparation_artifact: StatePreparationArtifact) \
            -> StateTomographyArtifact:
        try:
            state_tomography = StateTomography(run_config=self.run_config,
                                               tomography_config=self.config.get_tomography_config(),
                                               state_preparation_artifact=state_preparation_artifact,
                                               n_jobs=self.n_jobs)
            return state_tomography.initiate_state_tomography()
        except Exception as e:
            raise CCRException(e, sys) from e

    def start_measure_evaluation(self, state_preparation_artifact: StatePreparationArtifact,
                                 state_tomography_artifact: StateTomographyArtifact) -> MeasureEvaluationArtifact:
        try:
            verification_config = self.config.get_verification_config()
            measure_evaluation = MeasureEvaluation(
                run_config=self.run_config,
                measure_evaluation_config=self.config.get_measure_evaluation_config(self.run_label),
                state_preparation_artifact=state_preparation_artifact,
                state_tomography_artifact=state_tomography_artifact,
                theory_tolerance=verification_config.exact_tolerance,
                experiment_tolerance=verification_config.sampled_tolerance)
            return measure_evaluation.initiate_measure_evaluation()
        except Exception as e:
            raise CCRException(e, sys) from e

    def start_relation_verification(self, measure_evaluation_artifact: MeasureEvaluationArtifact) \
            -> VerificationArtifact:
        try:
            relation_verification = RelationVerification(
                verification_config=self.config.get_verification_config(),
                measure_evaluation_artifact=measure_evaluation_artifact,
                tolerance=self.get_tolerance())
            return relation_verification.initiate_relation_verification()
        except Exception as e:
            raise CCRException(e, sys) from e

    def _experiment(self, **changes) -> Experiment:
        fields = Pipeline.experiment._asdict()
        fields.update(changes)
        return Experiment(**fields)

    def run_pipeline(self) -> VerificationArtifact:
        try:
            if Pipeline.experiment.running_status:
                logging.info("Pipeline is already running")
                return self.verification_artifact
            logging.info(f"Pipeline starting for [{self.run_label}].")

            Pipeline.experiment = Experiment(experiment_id=str(uuid.uuid4()),
                                             initialization_timestamp=self.config.time_stamp,
                                             artifact_time_stamp=self.config.time_stamp,
                                             running_status=True,
                                             start_time=datetime.now(),
                                             stop_time=None,
                                             execution_time=None,
                                             message="Pipeline has been started.",
                                             experiment_file_path=Pipeline.experiment_file_path,
                                             run_label=self.run_label,
                                             mode=self.run_config.mode,
                                             noise=self.run_config.noise_name,
                                             dataset_file_path=None,
                                             total_violations=None,
                                             is_passed=None)
            logging.info(f"Pipeline experiment: {Pipeline.experiment}")
            self.save_experiment()

            try:
                state_preparation_artifact = self.start_state_preparation()
                self.state_tomography_artifact = self.start_state_tomography(
                    state_preparation_artifact=state_preparation_artifact)
                self.measure_evaluation_artifact = self.start_measure_evaluation(
                    state_preparation_artifact=state_preparation_artifact,
                    state_tomography_artifact=self.state_tomography_artifact)
                self.verification_artifact = self.start_relation_verification(
                    measure_evaluation_artifact=self.measure_evaluation_artifact)
            except Exception:
                stop_time = datetime.now()
                Pipeline.experiment = self._experiment(running_status=False, stop_time=stop_time,
                                                       execution_time=stop_time - Pipeline.experiment.start_time,
                                                       message="Pipeline has failed.")
                self.save_experiment()
                raise

            if self.verification_artifact.is_passed:
                logging.info("All relations hold at tolerance.")
            else:
                logging.info(f"Relations violated: {self.verification_artifact.message}")
            logging.info("Pipeline completed.")

            stop_time = datetime.now()
            Pipeline.experiment = self._experiment(
                running_status=False,
                stop_time=stop_time,
                execution_time=stop_time - Pipeline.experiment.start_time,
                message="Pipeline has been completed.",
                dataset_file_path=self.measure_evaluation_artifact.dataset_file_path,
                total_violations=self.verification_artifact.total_violations,
                is_passed=self.verification_artifact.is_passed)
            logging.info(f"Pipeline experiment: {Pipeline.experiment}")
            self.save_experiment()
            return self.verification_artifact
        except Exception as e:
            raise CCRException(e, sys) from e

    def run(self):
        try:
            self.run_pipeline()
        except Exception as e:
            raise e

    def save_experiment(self):
        try:
            if Pipeline.experiment.experiment_id is not None:
                experiment = Pipeline.experiment
                experiment_dict = experiment._asdict()
                experiment_dict: dict = {key: [value] for key, value in experiment_dict.items()}

                experiment_dict.update({
                    "created_time_stamp": [datetime.now()],
                    "experiment_file_path": [os.path.basename(Pipeline.experiment.experiment_file_path)]})

                experiment_report = pd.DataFrame(experiment_dict)

                os.makedirs(os.path.dirname(Pipeline.experiment_file_path), exist_ok=True)
                if os.path.exists(Pipeline.experiment_file_path):
                    experiment_report.to_csv(Pipeline.experiment_file_path, index=False, header=False, mode="a")
                else:
                    experiment_report.to_csv(Pipeline.experiment_file_path, mode="w", index=False, header=True)
            else:
                logging.info("No experiment started yet, nothing to save")
        except Exception as e:
            raise CCRException(e, sys) from e

    @classmethod
    def get_experiments_status(cls, limit: int = 5) -> pd.DataFrame:
        try:
            if cls.experiment_file_path is not None and os.path.exists(cls.experiment_file_path):
                df = pd.read_csv(cls.experiment_file_path)
                limit = -1 * int(limit)
                return df[limit:].drop(columns=["experiment_file_path", "initialization_timestamp"], axis=1)
            else:
                return pd.DataFrame()
        except Exception as e:
            raise CCRException(e, sys) from e


def _run_experiment(experiment: str, cfg: RunConfig = None, config: Configuration = None) -> pd.DataFrame:
    config = config or Configuration()
    run_config = cfg or config.get_run_config(experiment)
    if run_config.experiment != experiment:
        raise CCRException(f"run config is for {run_config.experiment}, not {experiment}")
    pipeline = Pipeline(config=config, run_config=run_config)
    pipeline.run_pipeline()
    return read_dataframe(pipeline.measure_evaluation_artifact.dataset_file_path)


def run_werner_sweep(cfg: RunConfig = None, config: Configuration = None) -> pd.DataFrame:
    """Runs the (x, w) sweep and returns the dataset it wrote."""
    return _run_experiment(EXPERIMENT_WERNER_SWEEP, cfg, config)


def run_random_states(cfg: RunConfig = None, config: Configuration = None) -> pd.DataFrame:
    """Runs the random-state study of one dimension and returns the dataset it wrote."""
    return _run_experiment(EXPERIMENT_RANDOM_STATES, cfg, config)


__all__ = ["Pipeline", "Experiment", "run_werner_sweep", "run_random_states", "verify"]

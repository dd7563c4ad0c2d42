import sys

import numpy as np
import pandas as pd

from Complementarity.constant import (COLUMN_BOUND, COLUMN_D_A, EXPERIMENT_RANDOM_STATES, SOURCE_EXPERIMENT,
                                      SOURCE_THEORY, STD_SUFFIX)
from Complementarity.entity.artifact_entity import (MeasureEvaluationArtifact, StatePreparationArtifact,
                                                    StateTomographyArtifact)
from Complementarity.entity.config_entity import MeasureEvaluationConfig, RunConfig
from Complementarity.entity.measures import CCR_NAMES, ICR_NAMES, MEASURE_NAMES, report, report_to_row
from Complementarity.exception import CCRException
from Complementarity.logger import logging
from Complementarity.util.util import write_dataframe

NEGATIVITY_COLUMN = "negativity_clipped"


def summarize_by_dimension(dataset: pd.DataFrame, sources) -> pd.DataFrame:
    """
    One row per quanton dimension: batch size, the l1 bound d_A - 1, batch means
    of C_l1 + P_l1 and W_l1 and the extreme relation residuals of each source.
    """
    rows = []
    for d_A, group in dataset.groupby(COLUMN_D_A, sort=True):
        row = {COLUMN_D_A: int(d_A), "num_states": len(group), COLUMN_BOUND: float(d_A) - 1.0}
        for source in sources:
            row[f"mean_C_l1_plus_P_l1_{source}"] = float((group[f"C_l1_{source}"] + group[f"P_l1_{source}"]).mean())
            row[f"mean_W_l1_{source}"] = float(group[f"W_l1_{source}"].mean())
            row[f"max_abs_ccr_{source}"] = float(group[[f"{c}_{source}" for c in CCR_NAMES]].abs().to_numpy().max())
            row[f"min_icr_{source}"] = float(group[[f"{c}_{source}" for c in ICR_NAMES]].to_numpy().min())
        rows.append(row)
    return pd.DataFrame(rows)


class MeasureEvaluation:
    """
    Evaluates every measure on the ideal states and, when tomography ran, on the
    reconstructed ones, and writes the run dataset.
    """

    def __init__(self, run_config: RunConfig, measure_evaluation_config: MeasureEvaluationConfig,
                 state_preparation_artifact: StatePreparationArtifact,
                 state_tomography_artifact: StateTomographyArtifact,
                 theory_tolerance: float = 1e-9, experiment_tolerance: float = 0.1):
        try:
            logging.info(f"{'=' * 20}Measure Evaluation log started.{'=' * 20} ")
            self.run_config = run_config
            self.measure_evaluation_config = measure_evaluation_config
            self.state_preparation_artifact = state_preparation_artifact
            self.state_tomography_artifact = state_tomography_artifact
            self.theory_tolerance = theory_tolerance
            self.experiment_tolerance = experiment_tolerance
        except Exception as e:
            raise CCRException(e, sys) from e

    def get_sources(self) -> list:
        if self.state_tomography_artifact is not None and self.state_tomography_artifact.is_performed:
            return [SOURCE_THEORY, SOURCE_EXPERIMENT]
        return [SOURCE_THEORY]

    def get_experiment_row(self, experiment_states: list) -> dict:
        """
        Mean over the repetitions of every column, plus the sample standard
        deviation of each measure when the state was reconstructed more than once.
        """
        rows = pd.DataFrame([report_to_row(report(state, tolerance=self.experiment_tolerance))
                             for state in experiment_states])
        experiment_row = self._suffixed(rows.mean().to_dict(), SOURCE_EXPERIMENT)
        if len(rows) > 1:
            for name in MEASURE_NAMES:
                experiment_row[f"{name}_{SOURCE_EXPERIMENT}{STD_SUFFIX}"] = float(rows[name].std(ddof=1))
        return experiment_row

    @staticmethod
    def _suffixed(measure_row: dict, source: str) -> dict:
        return {f"{name}_{source}": value for name, value in measure_row.items() if name != COLUMN_D_A}

    def get_dataset(self) -> pd.DataFrame:
        try:
            sources = self.get_sources()
            is_random = self.run_config.experiment == EXPERIMENT_RANDOM_STATES
            rows = []
            for i, (label, theory) in enumerate(zip(self.state_preparation_artifact.labels,
                                                    self.state_preparation_artifact.theory_states)):
                theory_row = report_to_row(report(theory, tolerance=self.theory_tolerance))
                row = dict(label)
                row[COLUMN_D_A] = theory_row[COLUMN_D_A]
                if is_random:
                    row[COLUMN_BOUND] = theory_row[COLUMN_D_A] - 1.0
                row.update(self._suffixed(theory_row, SOURCE_THEORY))
                if SOURCE_EXPERIMENT in sources:
                    row.update(self.get_experiment_row(self.state_tomography_artifact.experiment_states[i]))
                    row[NEGATIVITY_COLUMN] = float(np.mean(self.state_tomography_artifact.negativity_clipped[i]))
                rows.append(row)
            dataset = pd.DataFrame(rows)
            logging.info(f"Dataset with {len(dataset)} row(s) and {len(dataset.columns)} column(s)")
            return dataset
        except Exception as e:
            raise CCRException(e, sys) from e

    def initiate_measure_evaluation(self) -> MeasureEvaluationArtifact:
        try:
            sources = self.get_sources()
            dataset = self.get_dataset()
            dataset_file_path = self.measure_evaluation_config.dataset_file_path
            write_dataframe(dataset_file_path, dataset)

            summary_file_path = None
            if self.run_config.experiment == EXPERIMENT_RANDOM_STATES:
                summary_file_path = self.measure_evaluation_config.summary_file_path
                write_dataframe(summary_file_path, summarize_by_dimension(dataset, sources))

            measure_evaluation_artifact = MeasureEvaluationArtifact(
                dataset_file_path=dataset_file_path,
                summary_file_path=summary_file_path,
                num_rows=len(dataset),
                sources=sources,
                is_evaluated=True,
                message=f"Evaluated measures for {len(dataset)} state(s)")
            logging.info(f"Measure evaluation artifact: {measure_evaluation_artifact}")
            return measure_evaluation_artifact
        except Exception as e:
            raise CCRException(e, sys) from e

    def __del__(self):
        logging.info(f"{'>>' * 20}Measure Evaluation log completed.{'<<' * 20} \n\n")

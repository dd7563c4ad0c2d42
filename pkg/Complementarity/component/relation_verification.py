import re
import sys

import numpy as np
import pandas as pd

from Complementarity.entity.artifact_entity import MeasureEvaluationArtifact, VerificationArtifact
from Complementarity.entity.config_entity import VerificationConfig
from Complementarity.exception import CCRException, MalformedDataset
from Complementarity.logger import logging
from Complementarity.util.util import read_dataframe, write_yaml_file

RELATION_COLUMN_PATTERN = re.compile(r"^(ccr|icr)_(l1|wy|hs|vn)_(theory|experiment)$")


def relation_columns(dataset: pd.DataFrame) -> list:
    return [column for column in dataset.columns if RELATION_COLUMN_PATTERN.match(str(column))]


def verify(dataset, tolerance: float) -> dict:
    """
    Checks every complete relation (|residual| <= tolerance) and incomplete
    relation (slack >= -tolerance) column of a dataset, given as a DataFrame or
    a CSV path. Missing values count as violations.

    Returns a summary with the violation count and worst value per column.
    """
    if isinstance(dataset, str):
        try:
            dataset = read_dataframe(dataset)
        except CCRException as e:
            raise MalformedDataset(f"cannot read dataset: {e}") from e
    if tolerance < 0:
        raise MalformedDataset(f"tolerance must be non-negative, got {tolerance}")
    columns = relation_columns(dataset)
    if not columns:
        raise MalformedDataset("dataset has no ccr_*/icr_* relation columns")
    if dataset.empty:
        raise MalformedDataset("dataset has no rows")

    relations = {}
    total_violations = 0
    for column in columns:
        try:
            values = pd.to_numeric(dataset[column], errors="raise").to_numpy(dtype=float)
        except (ValueError, TypeError) as e:
            raise MalformedDataset(f"column {column} holds non-numeric values") from e
        kind = column[:3]
        if kind == "ccr":
            violated = ~(np.abs(values) <= tolerance)
            worst = float(values[np.nanargmax(np.abs(values))]) if not np.all(np.isnan(values)) else float("nan")
        else:
            violated = ~(values >= -tolerance)
            worst = float(np.nanmin(values)) if not np.all(np.isnan(values)) else float("nan")
        violations = int(np.sum(violated))
        total_violations += violations
        relations[column] = {"kind": kind, "violations": violations, "worst": worst,
                             "rows": [int(i) for i in np.flatnonzero(violated)[:10]]}

    return {"tolerance": float(tolerance),
            "num_rows": int(len(dataset)),
            "total_violations": total_violations,
            "passed": total_violations == 0,
            "relations": relations}


class RelationVerification:

    def __init__(self, verification_config: VerificationConfig,
                 measure_evaluation_artifact: MeasureEvaluationArtifact, tolerance: float):
        try:
            logging.info(f"{'=' * 20}Relation Verification log started.{'=' * 20} ")
            self.verification_config = verification_config
            self.measure_evaluation_artifact = measure_evaluation_artifact
            self.tolerance = tolerance
        except Exception as e:
            raise CCRException(e, sys) from e

    def initiate_relation_verification(self) -> VerificationArtifact:
        try:
            summary = verify(self.measure_evaluation_artifact.dataset_file_path, self.tolerance)
            report_file_path = self.verification_config.report_file_path
            write_yaml_file(report_file_path, summary)

            for column, relation in summary["relations"].items():
                if relation["violations"]:
                    logging.warning(f"{column}: {relation['violations']} violation(s), worst {relation['worst']:.3e}")

            verification_artifact = VerificationArtifact(
                report_file_path=report_file_path,
                tolerance=self.tolerance,
                total_violations=summary["total_violations"],
                summary=summary,
                is_passed=summary["passed"],
                message=f"{summary['total_violations']} violation(s) at tolerance {self.tolerance}")
            logging.info(f"Verification artifact: {verification_artifact.message}, report at [{report_file_path}]")
            return verification_artifact
        except Exception as e:
            raise CCRException(e, sys) from e

    def __del__(self):
        logging.info(f"{'>>' * 20}Relation Verification log completed.{'<<' * 20} \n\n")

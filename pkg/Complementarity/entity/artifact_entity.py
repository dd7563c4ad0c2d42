from collections import namedtuple

StatePreparationArtifact = namedtuple("StatePreparationArtifact",
                                      ["experiment", "labels", "circuits", "theory_states", "prepared_states",
                                       "quanton_qubits", "circuits_file_path", "is_prepared", "message"])

StateTomographyArtifact = namedtuple("StateTomographyArtifact",
                                     ["experiment_states", "negativity_clipped", "records_file_path",
                                      "is_performed", "message"])

MeasureEvaluationArtifact = namedtuple("MeasureEvaluationArtifact",
                                       ["dataset_file_path", "summary_file_path", "num_rows", "sources",
                                        "is_evaluated", "message"])

VerificationArtifact = namedtuple("VerificationArtifact",
                                  ["report_file_path", "tolerance", "total_violations", "summary", "is_passed",
                                   "message"])

PlotExportArtifact = namedtuple("PlotExportArtifact", ["data_file_paths", "image_file_paths", "message"])

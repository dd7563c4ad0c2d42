from collections import namedtuple

PipelineConfig = namedtuple("PipelineConfig", ["pipeline_name", "artifact_dir", "n_jobs"])

RunConfig = namedtuple("RunConfig", ["experiment", "mode", "grid", "dimension", "num_states", "num_gates",
                                     "shots", "repetitions", "noise_name", "noise", "seed"])

StatePreparationConfig = namedtuple("StatePreparationConfig", ["circuits_file_path"])

TomographyConfig = namedtuple("TomographyConfig", ["readout_mitigation", "records_file_path"])

MeasureEvaluationConfig = namedtuple("MeasureEvaluationConfig", ["dataset_file_path", "summary_file_path"])

VerificationConfig = namedtuple("VerificationConfig", ["exact_tolerance", "sampled_tolerance", "report_file_path"])

PlotExportConfig = namedtuple("PlotExportConfig", ["plot_dir"])

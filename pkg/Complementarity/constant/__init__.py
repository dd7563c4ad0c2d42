import os
from datetime import datetime


def get_current_time_stamp():
    return f"{datetime.now().strftime('%Y-%m-%d-%H-%M-%S')}"


PACKAGE_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
CONFIG_DIR = "config"
CONFIG_FILE_NAME = "config.yaml"
# config/config.yaml is looked up in the working directory first, then next to the package
PACKAGE_CONFIG_FILE_PATH = os.path.join(os.path.dirname(PACKAGE_DIR), CONFIG_DIR, CONFIG_FILE_NAME)

CURRENT_TIME_STAMP = get_current_time_stamp()


# Numerical tolerances
HERMITIAN_TOLERANCE = 1e-10
TRACE_TOLERANCE = 1e-10
PSD_TOLERANCE = 1e-9
NORMALIZATION_TOLERANCE = 1e-12
UNITARY_TOLERANCE = 1e-12
SINGULAR_DETERMINANT_TOLERANCE = 1e-12
MAX_UNITARY_QUBITS = 10


# Pipeline related variables
PIPELINE_CONFIG_KEY = "pipeline_config"
PIPELINE_NAME_KEY = "pipeline_name"
PIPELINE_ARTIFACT_DIR_KEY = "artifact_dir"
PIPELINE_N_JOBS_KEY = "n_jobs"


# Experiment related variables
EXPERIMENT_WERNER_SWEEP = "werner_sweep"
EXPERIMENT_RANDOM_STATES = "random_states"
EXPERIMENTS = (EXPERIMENT_WERNER_SWEEP, EXPERIMENT_RANDOM_STATES)

MODE_EXACT = "exact"
MODE_SAMPLED = "sampled"
MODES = (MODE_EXACT, MODE_SAMPLED)

WERNER_SWEEP_CONFIG_KEY = "werner_sweep_config"
RANDOM_STATES_CONFIG_KEY = "random_states_config"
RUN_GRID_KEY = "grid"
RUN_SHOTS_KEY = "shots"
RUN_MODE_KEY = "mode"
RUN_NOISE_KEY = "noise"
RUN_SEED_KEY = "seed"
RUN_DIMENSION_KEY = "dimension"
RUN_NUM_STATES_KEY = "num_states"
RUN_NUM_GATES_KEY = "num_gates"
RUN_DIMENSIONS_KEY = "dimensions"
RUN_REPETITIONS_KEY = "repetitions"
SUPPORTED_DIMENSIONS = (2, 4, 8)


# Noise related variables
NOISE_PRESETS_KEY = "noise_presets"
NOISE_DEPOLARIZING_KEY = "depolarizing_p"
NOISE_READOUT_ERROR_KEY = "readout_error"
NOISE_GATE_ERROR_KEY = "gate_error"
NOISE_MULTI_QUBIT_GATE_ERROR_KEY = "multi_qubit_gate_error"
NOISE_METADATA_KEY = "metadata"
NOISE_OFF = "off"
NOISE_DEFAULT = "default"


# Tomography related variables
TOMOGRAPHY_CONFIG_KEY = "tomography_config"
TOMOGRAPHY_SHOTS_KEY = "shots"
TOMOGRAPHY_READOUT_MITIGATION_KEY = "readout_mitigation"
DEFAULT_SHOTS = 8192


# Verification related variables
VERIFICATION_CONFIG_KEY = "verification_config"
VERIFICATION_EXACT_TOLERANCE_KEY = "exact_tolerance"
VERIFICATION_SAMPLED_TOLERANCE_KEY = "sampled_tolerance"
VERIFICATION_REPORT_FILE_NAME = "verification.yaml"


# Dataset columns
SOURCE_THEORY = "theory"
SOURCE_EXPERIMENT = "experiment"
COLUMN_X = "x"
COLUMN_W = "w"
COLUMN_INDEX = "index"
COLUMN_NUM_QUBITS = "num_qubits"
COLUMN_NUM_GATES = "num_gates"
COLUMN_D_A = "d_A"
COLUMN_BOUND = "bound"
RELATION_NAMES = ("l1", "wy", "hs", "vn")
STD_SUFFIX = "_std"
CSV_FLOAT_FORMAT = "%.17g"


# Artifact file names
DATASET_FILE_NAME = "dataset.csv"
SUMMARY_FILE_SUFFIX = "_summary.csv"
CIRCUITS_FILE_SUFFIX = "_circuits.jsonl"
TOMOGRAPHY_RECORDS_FILE_NAME = "tomography_records.pkl"
EXPERIMENT_DIR_NAME = "experiment"
EXPERIMENT_FILE_NAME = "experiment.csv"
STATE_PREPARATION_ARTIFACT_DIR = "state_preparation"
STATE_TOMOGRAPHY_ARTIFACT_DIR = "state_tomography"
MEASURE_EVALUATION_ARTIFACT_DIR = "measure_evaluation"
RELATION_VERIFICATION_ARTIFACT_DIR = "relation_verification"
PLOT_DIR_NAME = "plots"


# Command-line overrides that are not run parameters
OVERRIDE_OUT_KEY = "out"
OVERRIDE_TOLERANCE_KEY = "tolerance"


# Random streams spawned from the run seed
PREPARATION_SEED_STREAM = 0
TOMOGRAPHY_SEED_STREAM = 1

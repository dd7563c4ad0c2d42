"""
ccr-lab: command-line entry point.

Exit codes: 0 when every relation holds at tolerance, 1 when violations were
found, 2 for usage, configuration or dataset errors.
"""
import argparse
import sys

import yaml

from Complementarity.component.plot_export import PlotExport
from Complementarity.component.relation_verification import verify
from Complementarity.config.configuration import Configuration
from Complementarity.constant import *
from Complementarity.exception import CCRException, ConfigError, IncompleteSettings, MalformedDataset, find_cause
from Complementarity.logger import get_latest_log_file, get_log_dataframe, logging
from Complementarity.pipeline.pipeline import Pipeline

EXIT_OK = 0
EXIT_VIOLATIONS = 1
EXIT_USAGE = 2


def _add_run_arguments(parser: argparse.ArgumentParser):
    parser.add_argument("--config", help="YAML or JSON config file merged over the defaults")
    parser.add_argument("--shots", type=int, help="shots per tomography setting")
    parser.add_argument("--mode", choices=MODES, help="exact states or sampled tomography")
    parser.add_argument("--noise", help="noise preset name from the config")
    parser.add_argument("--seed", type=int, help="run seed")
    parser.add_argument("--repetitions", type=int, help="tomography repetitions per state in sampled mode")
    parser.add_argument("--tol", type=float, help="verification tolerance")
    parser.add_argument("--out", help="dataset CSV path; summary and circuit files are written beside it")
    parser.add_argument("--n-jobs", type=int, dest="n_jobs", help="worker threads")
    parser.add_argument("--readout-mitigation", action="store_true", default=None, dest="readout_mitigation",
                        help="invert the readout confusion matrices before reconstruction")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ccr-lab",
                                     description="Complete and incomplete complementarity relations on "
                                                 "simulated quantum states.")
    sub_parsers = parser.add_subparsers(dest="command", required=True)

    werner = sub_parsers.add_parser("werner", help="sweep the one-qubit Werner-like family over (x, w)")
    werner.add_argument("--grid", type=int, help="grid steps per axis")
    _add_run_arguments(werner)

    random_states = sub_parsers.add_parser("random", help="random states from random circuits")
    random_states.add_argument("--dim", type=int, choices=SUPPORTED_DIMENSIONS, dest="dimension",
                               help="quanton dimension")
    random_states.add_argument("--states", type=int, dest="num_states", help="number of random states")
    random_states.add_argument("--gates", type=int, dest="num_gates", help="gates per random circuit")
    _add_run_arguments(random_states)

    verify_parser = sub_parsers.add_parser("verify", help="check the relations of a dataset")
    verify_parser.add_argument("--in", dest="in_file", required=True, help="dataset CSV")
    verify_parser.add_argument("--tol", type=float, default=1e-9, help="tolerance")

    plot = sub_parsers.add_parser("plot", help="gnuplot data files and PNG plots of one or more datasets")
    plot.add_argument("--in", dest="in_file", required=True, nargs="+",
                      help="dataset CSV; several random-state datasets plot the trend over d_A")
    plot.add_argument("--out-dir", dest="out_dir", help="output directory")

    logs = sub_parsers.add_parser("logs", help="print the tail of the latest log file")
    logs.add_argument("--lines", type=int, default=20)
    return parser


def _print_summary(summary: dict):
    print(yaml.safe_dump(summary, sort_keys=False), end="")


def run_experiment(args: argparse.Namespace, experiment: str) -> int:
    overrides = {
        RUN_GRID_KEY: getattr(args, "grid", None),
        RUN_DIMENSION_KEY: getattr(args, "dimension", None),
        RUN_NUM_STATES_KEY: getattr(args, "num_states", None),
        RUN_NUM_GATES_KEY: getattr(args, "num_gates", None),
        RUN_SHOTS_KEY: args.shots,
        RUN_MODE_KEY: args.mode,
        RUN_NOISE_KEY: args.noise,
        RUN_SEED_KEY: args.seed,
        RUN_REPETITIONS_KEY: args.repetitions,
        PIPELINE_N_JOBS_KEY: args.n_jobs,
        TOMOGRAPHY_READOUT_MITIGATION_KEY: args.readout_mitigation,
        OVERRIDE_TOLERANCE_KEY: args.tol,
        OVERRIDE_OUT_KEY: args.out,
    }
    config = Configuration(config_file_path=args.config, overrides=overrides)
    pipeline = Pipeline(config=config, run_config=config.get_run_config(experiment))
    verification_artifact = pipeline.run_pipeline()
    print(f"dataset: {pipeline.measure_evaluation_artifact.dataset_file_path}")
    _print_summary(verification_artifact.summary)
    return EXIT_OK if verification_artifact.is_passed else EXIT_VIOLATIONS


def run_verify(args: argparse.Namespace) -> int:
    summary = verify(args.in_file, args.tol)
    _print_summary(summary)
    return EXIT_OK if summary["passed"] else EXIT_VIOLATIONS


def run_plot(args: argparse.Namespace) -> int:
    config = Configuration()
    plot_export = PlotExport(plot_export_config=config.get_plot_export_config(args.out_dir),
                             dataset_file_path=args.in_file)
    plot_export_artifact = plot_export.initiate_plot_export()
    for file_path in plot_export_artifact.data_file_paths + plot_export_artifact.image_file_paths:
        print(file_path)
    return EXIT_OK


def run_logs(args: argparse.Namespace) -> int:
    log_file_path = get_latest_log_file()
    if log_file_path is None:
        print("no log files found")
        return EXIT_OK
    messages = get_log_dataframe(log_file_path)["log_message"].tail(args.lines)
    if messages.empty:
        print(f"{log_file_path} is empty")
    for message in messages:
        print(message)
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "werner":
            return run_experiment(args, EXPERIMENT_WERNER_SWEEP)
        if args.command == "random":
            return run_experiment(args, EXPERIMENT_RANDOM_STATES)
        if args.command == "verify":
            return run_verify(args)
        if args.command == "plot":
            return run_plot(args)
        return run_logs(args)
    except CCRException as e:
        logging.error(f"{e}")
        cause = (find_cause(e, ConfigError) or find_cause(e, MalformedDataset)
                 or find_cause(e, IncompleteSettings) or e)
        print(f"ccr-lab: {cause}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

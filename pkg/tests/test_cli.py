import json
import os

import pandas as pd
import pytest
import yaml

from Complementarity.cli import EXIT_OK, EXIT_USAGE, EXIT_VIOLATIONS, build_parser, main


def _summary(captured: str) -> dict:
    lines = captured.splitlines()
    assert lines[0].startswith("dataset: ")
    return yaml.safe_load("\n".join(lines[1:]))


class TestRunCommands:

    def test_exact_werner_sweep_passes(self, tmp_workdir, capsys):
        assert main(["werner", "--grid", "5", "--out", "sweep.csv"]) == EXIT_OK
        summary = _summary(capsys.readouterr().out)
        assert summary["passed"]
        assert summary["num_rows"] == 25
        assert len(pd.read_csv(tmp_workdir / "sweep.csv")) == 25

    def test_random_states_run(self, tmp_workdir, capsys):
        code = main(["random", "--dim", "8", "--states", "5", "--gates", "4", "--mode", "exact", "--out", "d8.csv"])
        assert code == EXIT_OK
        assert _summary(capsys.readouterr().out)["total_violations"] == 0
        assert (tmp_workdir / "d8_summary.csv").exists()
        assert (tmp_workdir / "d8_circuits.jsonl").exists()

    def test_sampled_run_with_noise_preset(self, tmp_workdir, capsys):
        code = main(["werner", "--grid", "2", "--mode", "sampled", "--shots", "512", "--noise", "default",
                     "--seed", "3", "--out", "noisy.csv", "--readout-mitigation"])
        assert code == EXIT_OK
        assert "C_l1_experiment" in pd.read_csv(tmp_workdir / "noisy.csv").columns

    def test_repetitions_flag(self, tmp_workdir, capsys):
        code = main(["werner", "--grid", "2", "--mode", "sampled", "--shots", "256", "--repetitions", "2",
                     "--out", "repeated.csv"])
        assert code == EXIT_OK
        dataset = pd.read_csv(tmp_workdir / "repeated.csv")
        assert (dataset["C_l1_experiment_std"] > 0).all()

    def test_json_config_file(self, tmp_workdir, capsys):
        (tmp_workdir / "run.json").write_text(json.dumps({"werner_sweep_config": {"grid": 3}}))
        assert main(["werner", "--config", "run.json", "--out", "sweep.csv"]) == EXIT_OK
        assert len(pd.read_csv(tmp_workdir / "sweep.csv")) == 9


class TestVerifyCommand:

    @pytest.fixture
    def sweep_file(self, tmp_workdir, capsys):
        main(["werner", "--grid", "3", "--out", "sweep.csv"])
        capsys.readouterr()
        return tmp_workdir / "sweep.csv"

    def test_clean_dataset(self, sweep_file, capsys):
        assert main(["verify", "--in", str(sweep_file), "--tol", "1e-9"]) == EXIT_OK
        assert yaml.safe_load(capsys.readouterr().out)["passed"]

    def test_violations_exit_with_one(self, sweep_file, capsys):
        dataset = pd.read_csv(sweep_file)
        dataset.loc[1, "ccr_l1_theory"] = 0.1
        dataset.to_csv(sweep_file, index=False)
        assert main(["verify", "--in", str(sweep_file)]) == EXIT_VIOLATIONS
        assert yaml.safe_load(capsys.readouterr().out)["total_violations"] == 1

    def test_malformed_dataset(self, tmp_workdir, capsys):
        (tmp_workdir / "bad.csv").write_text("x,w\n0.1,0.2\n")
        assert main(["verify", "--in", "bad.csv"]) == EXIT_USAGE
        assert "relation columns" in capsys.readouterr().err

    def test_plot(self, sweep_file, tmp_workdir, capsys):
        assert main(["plot", "--in", str(sweep_file), "--out-dir", "plots"]) == EXIT_OK
        printed = capsys.readouterr().out.split()
        assert len(printed) == 10
        assert (tmp_workdir / "plots" / "sweep_C_l1.png").exists()


class TestUsageErrors:

    def test_unsupported_dimension_is_rejected_by_the_parser(self):
        with pytest.raises(SystemExit) as error:
            build_parser().parse_args(["random", "--dim", "3"])
        assert error.value.code == EXIT_USAGE

    def test_missing_command(self):
        with pytest.raises(SystemExit) as error:
            main([])
        assert error.value.code == EXIT_USAGE

    def test_bad_grid(self, tmp_workdir, capsys):
        assert main(["werner", "--grid", "1"]) == EXIT_USAGE
        assert "grid" in capsys.readouterr().err

    def test_unknown_noise_preset(self, tmp_workdir, capsys):
        assert main(["werner", "--grid", "2", "--noise", "nowhere"]) == EXIT_USAGE
        assert "nowhere" in capsys.readouterr().err

    def test_missing_config_file(self, tmp_workdir, capsys):
        assert main(["werner", "--config", "absent.yaml"]) == EXIT_USAGE


def test_logs_command(capsys):
    assert main(["logs", "--lines", "3"]) == EXIT_OK
    assert capsys.readouterr().out


def test_plot_trend_over_dimensions(tmp_workdir, capsys):
    for dimension in ("2", "4"):
        main(["random", "--dim", dimension, "--states", "2", "--out", f"d{dimension}.csv"])
    capsys.readouterr()
    assert main(["plot", "--in", "d2.csv", "d4.csv", "--out-dir", "plots"]) == EXIT_OK
    assert capsys.readouterr().out.split() == [os.path.join("plots", "dimensions_l1.dat"),
                                               os.path.join("plots", "dimensions_l1.png")]
    assert (tmp_workdir / "plots" / "dimensions_l1.png").exists()

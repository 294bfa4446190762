import csv
import json

import numpy as np
import pytest
import yaml

from momab.cli import (
    LOWER_BOUND_HEADER,
    SUMMARY_HEADER,
    SWEEP_HEADER,
    TRAJECTORY_HEADER,
    main,
)


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


def write_config(path, data):
    path.write_text(yaml.safe_dump(data))
    return str(path)


class TestExitCodes:
    def test_unknown_policy_is_a_config_error(self, tmp_path, capsys):
        code = main(["run", "--policy", "thompson", "--out", str(tmp_path)])
        assert code == 2
        assert "unknown policy" in capsys.readouterr().err

    def test_missing_config_file(self, tmp_path):
        assert main(["run", "--config", str(tmp_path / "nope.yaml")]) == 2

    def test_non_mapping_config(self, tmp_path):
        cfg = tmp_path / "bad.yaml"
        cfg.write_text("- just\n- a\n- list\n")
        assert main(["run", "--config", str(cfg)]) == 2

    def test_nonpositive_runs(self, tmp_path):
        assert main(["run", "--runs", "0", "--out", str(tmp_path)]) == 2

    def test_bad_family_parameters(self, tmp_path):
        cfg = write_config(
            tmp_path / "cfg.yaml",
            {"instance": {"family": "synthetic", "delta": 0.02, "m": 30, "K": 20}},
        )
        assert main(["run", "--config", cfg, "--out", str(tmp_path)]) == 2

    def test_horizon_below_warm_start_is_a_runtime_error(self, tmp_path):
        code = main(["run", "--horizon", "10", "--runs", "1", "--out", str(tmp_path)])
        assert code == 3


class TestRunCommand:
    def test_writes_summary_and_prints_one_line_per_policy(self, tmp_path, capsys):
        code = main([
            "run", "--horizon", "200", "--runs", "2", "--seed", "7",
            "--out", str(tmp_path), "--diagnostics",
        ])
        assert code == 0
        rows = read_csv(tmp_path / "summary.csv")
        assert rows[0] == SUMMARY_HEADER
        assert len(rows) == 3  # header + wgfc + pareto-ucb1
        assert {rows[1][1], rows[2][1]} == {"wgfc", "pareto-ucb1"}
        out = capsys.readouterr().out
        assert out.count("regret") == 2
        assert "cert rate" in out

    def test_trajectory_file(self, tmp_path):
        code = main([
            "run", "--horizon", "150", "--runs", "2", "--seed", "7",
            "--out", str(tmp_path), "--trajectories",
        ])
        assert code == 0
        rows = read_csv(tmp_path / "trajectory.csv")
        assert rows[0] == TRAJECTORY_HEADER
        assert len(rows) == 151
        assert rows[1][0] == "1"
        assert rows[-1][0] == "150"

    def test_single_policy_selection(self, tmp_path):
        code = main([
            "run", "--policy", "wgfc", "--horizon", "120", "--runs", "1",
            "--seed", "3", "--out", str(tmp_path),
        ])
        assert code == 0
        rows = read_csv(tmp_path / "summary.csv")
        assert len(rows) == 2
        assert rows[1][1] == "wgfc"

    def test_warm_start_only_run_matches_gap_sum(self, tmp_path):
        code = main([
            "run", "--policy", "wgfc", "--horizon", "20", "--runs", "1",
            "--seed", "3", "--out", str(tmp_path),
        ])
        assert code == 0
        rows = read_csv(tmp_path / "summary.csv")
        mean = float(rows[1][SUMMARY_HEADER.index("regret_mean")])
        assert mean == pytest.approx(0.12 + 17 * 0.20, abs=1e-9)

    def test_reruns_are_byte_identical(self, tmp_path):
        args = ["run", "--horizon", "200", "--runs", "2", "--seed", "11", "--diagnostics"]
        out_a, out_b, out_c = (tmp_path / name for name in ("a", "b", "c"))
        assert main(args + ["--out", str(out_a)]) == 0
        assert main(args + ["--out", str(out_b)]) == 0
        assert main(args + ["--out", str(out_c), "--parallelism", "2"]) == 0
        original = (out_a / "summary.csv").read_bytes()
        assert (out_b / "summary.csv").read_bytes() == original
        assert (out_c / "summary.csv").read_bytes() == original

    def test_output_directory_from_environment(self, tmp_path, monkeypatch):
        monkeypatch.setenv("MOMAB_OUT_DIR", str(tmp_path / "envout"))
        code = main(["run", "--horizon", "80", "--runs", "1", "--seed", "1",
                     "--policy", "wgfc", "--arms", "10"])
        assert code == 0
        assert (tmp_path / "envout" / "summary.csv").exists()

    def test_config_file_with_flag_overrides(self, tmp_path):
        cfg = write_config(tmp_path / "cfg.yaml", {
            "horizon": 50_000,
            "runs": 1,
            "seed": 5,
            "policy": "wgfc",
            "instance": {"family": "synthetic", "delta": 0.05, "m": 2, "K": 8},
        })
        code = main(["run", "--config", cfg, "--horizon", "100", "--out", str(tmp_path)])
        assert code == 0
        rows = read_csv(tmp_path / "summary.csv")
        assert rows[1][SUMMARY_HEADER.index("T")] == "100"
        assert "delta=0.05" in rows[1][0]


class TestSweeps:
    def test_gap_sweep_schema_and_rows(self, tmp_path):
        cfg = write_config(tmp_path / "cfg.yaml", {"deltas": [0.12, 0.02]})
        code = main([
            "gap-sweep", "--config", cfg, "--horizon", "300", "--runs", "2",
            "--seed", "5", "--out", str(tmp_path),
        ])
        assert code == 0
        rows = read_csv(tmp_path / "gap_sweep.csv")
        assert rows[0] == SWEEP_HEADER
        assert [r[0] for r in rows[1:]] == ["0.12", "0.02"]
        assert all(r[1] == "1" for r in rows[1:])
        fig = read_csv(tmp_path / "fig1_gap.csv")
        assert fig[0] == ["delta", "c_pucb", "pucb_regret", "wgfc_regret"]
        assert len(fig) == 3

    def test_crowd_sweep_schema_and_rows(self, tmp_path):
        cfg = write_config(tmp_path / "cfg.yaml", {"crowd_sizes": [4]})
        code = main([
            "crowd-sweep", "--config", cfg, "--horizon", "300", "--runs", "2",
            "--seed", "5", "--out", str(tmp_path),
        ])
        assert code == 0
        rows = read_csv(tmp_path / "crowd_sweep.csv")
        assert rows[0] == SWEEP_HEADER
        assert rows[1][0] == "0.02"
        assert rows[1][1] == "4"
        assert (tmp_path / "fig1_crowd.csv").exists()

    def test_coefficient_column_increases_as_gap_shrinks(self, tmp_path):
        code = main([
            "gap-sweep", "--horizon", "300", "--runs", "1", "--seed", "5",
            "--out", str(tmp_path),
        ])
        assert code == 0
        rows = read_csv(tmp_path / "gap_sweep.csv")
        coefficients = [float(r[2]) for r in rows[1:]]
        assert coefficients == sorted(coefficients)


class TestLowerBound:
    def test_constants_and_monotone_regret(self, tmp_path):
        # Two arms keep certification inside the horizon for every tested
        # gap, which is where the inverse-gap regret growth is visible.
        cfg = write_config(tmp_path / "cfg.yaml", {
            "family": {"K": 2, "d": 2},
            "scalar_gaps": [0.25, 0.2, 0.15],
        })
        code = main([
            "lower-bound", "--config", cfg, "--horizon", "10000", "--runs", "4",
            "--seed", "9", "--out", str(tmp_path),
        ])
        assert code == 0
        rows = read_csv(tmp_path / "lower_bound.csv")
        assert rows[0] == LOWER_BOUND_HEADER
        gaps = [float(r[0]) for r in rows[1:]]
        regrets = [float(r[1]) for r in rows[1:]]
        floors = [float(r[3]) for r in rows[1:]]
        bounds = [float(r[4]) for r in rows[1:]]
        assert gaps == [0.25, 0.2, 0.15]
        assert floors[0] == pytest.approx(0.375 / 0.25)
        assert all(r <= b for r, b in zip(regrets, bounds))
        assert regrets[0] < regrets[1] < regrets[2]

    def test_default_grid_reports_reference_floor(self, tmp_path):
        code = main([
            "lower-bound", "--horizon", "60", "--runs", "1", "--seed", "2",
            "--out", str(tmp_path),
        ])
        assert code == 0
        rows = read_csv(tmp_path / "lower_bound.csv")
        assert [float(r[0]) for r in rows[1:]] == [0.25, 0.125, 0.0625]
        assert float(rows[1][3]) == pytest.approx(28.5)


class TestAnalyze:
    def test_synthetic_report(self, tmp_path, capsys):
        code = main([
            "analyze", "--delta", "0.02", "--m", "12", "--out", str(tmp_path),
        ])
        assert code == 0
        out = capsys.readouterr().out
        assert "pareto set: [0, 1]" in out
        assert "champion objective: 0" in out
        report = json.loads((tmp_path / "analysis.json").read_text())
        assert report["pareto_set"] == [0, 1]
        assert report["champion_gap"] == pytest.approx(0.55)
        assert report["cpucb_coefficient"] == pytest.approx(143.82, abs=0.01)
        assert report["cpucb_exceeds_64"] is True

    def test_duplicated_report(self, tmp_path, capsys):
        code = main([
            "analyze", "--family", "duplicated", "--delta-sc", "0.25",
            "--out", str(tmp_path),
        ])
        assert code == 0
        report = json.loads((tmp_path / "analysis.json").read_text())
        assert report["pareto_set"] == [0]
        assert report["champion_gap"] == pytest.approx(0.25)

    def test_non_unique_winners_suppress_champion_quantities(self, tmp_path, capsys):
        cfg = write_config(tmp_path / "cfg.yaml", {
            "instance": {"means": [[0.5, 0.5], [0.5, 0.5]], "label": "flat"},
        })
        code = main(["analyze", "--config", cfg, "--out", str(tmp_path)])
        assert code == 0
        out = capsys.readouterr().out
        assert "unique winners: False" in out
        assert "suppressed" in out
        report = json.loads((tmp_path / "analysis.json").read_text())
        assert "champion_gap" not in report
        assert report["unique_winners"] is False

import numpy as np
import pytest

from momab import (
    analyze,
    batch,
    cumulative_pareto_regret,
    duplicated_bernoulli,
    run,
    run_seed,
    synthetic_family,
    theorem1_bound,
    trajectory_export,
)

INSTANCE = synthetic_family(0.12, 1)


class TestRun:
    def test_warm_start_only_horizon(self):
        result = run(INSTANCE, "wgfc", 20, seed=1)
        stats = analyze(INSTANCE.means)
        assert np.array_equal(result.actions, np.arange(20))
        assert np.all(result.pull_counts == 1)
        assert result.final_regret == pytest.approx(stats.pareto_gaps.sum())
        assert result.certification_round is None
        assert result.certified_arm is None
        assert result.certified_correct is None

    def test_horizon_shorter_than_warm_start(self):
        with pytest.raises(ValueError):
            run(INSTANCE, "wgfc", 19, seed=1)

    def test_pull_counts_sum_to_horizon(self):
        result = run(INSTANCE, "wgfc", 800, seed=3)
        assert result.pull_counts.sum() == 800

    def test_cumulative_regret_is_nondecreasing(self):
        result = run(INSTANCE, "pareto-ucb1", 600, seed=3)
        assert np.all(np.diff(result.cumulative_regret) >= 0.0)

    def test_regret_identity_against_pull_counts(self):
        stats = analyze(INSTANCE.means)
        for name in ("wgfc", "pareto-ucb1"):
            result = run(INSTANCE, name, 1500, seed=8)
            direct = cumulative_pareto_regret(stats.pareto_gaps, result.pull_counts)
            assert result.final_regret == pytest.approx(direct, abs=1e-9)

    def test_bit_identical_reruns(self):
        first = run(INSTANCE, "wgfc", 1200, seed=44, diagnostics=True)
        second = run(INSTANCE, "wgfc", 1200, seed=44, diagnostics=True)
        assert np.array_equal(first.actions, second.actions)
        assert np.array_equal(first.cumulative_regret, second.cumulative_regret)
        assert first.certification_round == second.certification_round
        assert first.final_regret == second.final_regret

    def test_different_seeds_differ(self):
        first = run(INSTANCE, "wgfc", 1200, seed=44)
        second = run(INSTANCE, "wgfc", 1200, seed=45)
        assert not np.array_equal(first.actions, second.actions)

    def test_post_certification_increments_are_zero(self):
        result = run(INSTANCE, "wgfc", 5000, seed=2)
        assert result.certification_round is not None
        assert result.certified_correct
        tail = np.diff(result.cumulative_regret[result.certification_round - 1 :])
        assert np.all(tail == 0.0)

    def test_diagnostics_clean_on_confident_runs(self):
        result = run(INSTANCE, "wgfc", 5000, seed=2, diagnostics=True)
        assert result.confidence_event_held
        assert result.diagnostics.total() == 0

    def test_diagnostics_off_reports_nothing(self):
        result = run(INSTANCE, "wgfc", 500, seed=2)
        assert result.confidence_event_held is None
        assert result.diagnostics is None

    def test_certification_on_dominating_arm_instance_is_correct(self):
        # With one arm dominating everything, any certification must land on
        # it whenever the confidence event held.
        inst = duplicated_bernoulli(5, 2, 0.25)
        for index in range(6):
            result = run(inst, "wgfc", 4000, seed=run_seed(777, index), diagnostics=True)
            if result.confidence_event_held and result.certification_round is not None:
                assert result.certified_arm == 0
                assert result.certified_correct

    def test_confidence_event_holds_at_tested_sizes(self):
        inst = synthetic_family(0.1, 1, 4, u=0.2)
        held = [
            run(inst, "wgfc", 400, seed=run_seed(31, i), diagnostics=True).confidence_event_held
            for i in range(100)
        ]
        assert all(held)


class TestBatch:
    def test_single_run_statistics(self):
        summary = batch(INSTANCE, "wgfc", 500, runs=1, base_seed=7)
        result = run(INSTANCE, "wgfc", 500, seed=run_seed(7, 0))
        assert summary.regret_mean == pytest.approx(result.final_regret)
        assert summary.regret_std == 0.0
        assert summary.runs == 1

    def test_mean_and_std_match_run_results(self):
        summary, results = batch(INSTANCE, "wgfc", 500, runs=5, base_seed=7, return_runs=True)
        finals = np.array([r.final_regret for r in results])
        assert summary.regret_mean == pytest.approx(finals.mean())
        assert summary.regret_std == pytest.approx(finals.std(ddof=1))

    def test_parallel_equals_serial_bitwise(self):
        serial = batch(INSTANCE, "wgfc", 600, runs=4, base_seed=99, diagnostics=True)
        parallel = batch(
            INSTANCE, "wgfc", 600, runs=4, base_seed=99, diagnostics=True, parallelism=2
        )
        assert np.array_equal(serial.final_regrets, parallel.final_regrets)
        assert np.array_equal(serial.mean_trajectory, parallel.mean_trajectory)
        assert serial.certification_rounds == parallel.certification_rounds
        assert serial.regret_mean == parallel.regret_mean
        assert serial.diagnostics == parallel.diagnostics

    def test_regret_mean_below_theorem_ceiling(self):
        summary = batch(INSTANCE, "wgfc", 2000, runs=3, base_seed=5)
        stats = analyze(INSTANCE.means)
        assert summary.regret_mean <= theorem1_bound(stats, 20, 2, 2000)

    def test_rejects_zero_runs(self):
        with pytest.raises(ValueError):
            batch(INSTANCE, "wgfc", 500, runs=0, base_seed=1)


class TestTrajectoryExport:
    def test_single_run_trajectory_is_its_own_mean(self):
        _, results = batch(INSTANCE, "wgfc", 400, runs=1, base_seed=3, return_runs=True)
        table = trajectory_export(results)
        assert np.array_equal(table.mean_cumulative_regret, results[0].cumulative_regret)
        assert table.rounds[0] == 1
        assert table.rounds[-1] == 400

    def test_certification_fraction_reaches_one(self):
        _, results = batch(INSTANCE, "wgfc", 5000, runs=4, base_seed=3, return_runs=True)
        assert all(r.certification_round is not None for r in results)
        table = trajectory_export(results)
        last = max(r.certification_round for r in results)
        assert table.certification_fraction[last - 1] == 1.0
        assert table.certification_fraction[-1] == 1.0
        assert np.all(np.diff(table.certification_fraction) >= 0.0)
        assert table.median_certification_round == pytest.approx(
            np.median([r.certification_round for r in results])
        )

    def test_uncertified_runs_have_no_median(self):
        _, results = batch(INSTANCE, "pareto-ucb1", 400, runs=2, base_seed=3, return_runs=True)
        table = trajectory_export(results)
        assert table.median_certification_round is None
        assert np.all(table.certification_fraction == 0.0)

    def test_mixed_horizons_rejected(self):
        a = run(INSTANCE, "wgfc", 400, seed=1)
        b = run(INSTANCE, "wgfc", 500, seed=1)
        with pytest.raises(ValueError):
            trajectory_export([a, b])

    def test_empty_collection_rejected(self):
        with pytest.raises(ValueError):
            trajectory_export([])

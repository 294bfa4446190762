"""Seeded policy-versus-instance runs, regret accounting, and batch aggregation.

A run executes the decide/sample/observe loop for a fixed horizon, charging
each round the true Pareto gap of the played arm.  With diagnostics enabled
it also verifies, online, the inequalities behind the width-guided policy's
guarantee: the global confidence event (every running mean within its radius
of the true mean, all arms and objectives, all rounds after the warm start),
correctness of any certification, and the regret/width inequalities at
exploring rounds.  Violations are counted, never raised; on runs where the
confidence event held, all counters are expected to be zero.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .environments import BanditInstance, run_generators, run_seed, sample
from .pareto import analyze
from .policies import make_policy


@dataclass
class DiagnosticCounters:
    """Online checks of the certification guarantee, counted per run.

    certified_wrong_winner: certification stored an arm other than the true
        winner of the certified objective.
    gap_exceeds_width: an exploring round played an arm whose Pareto gap
        exceeded four times its confidence radius.
    width_floor_broken: an exploring round where the champion objective's
        top-two pair width fell below half the champion gap, or the played
        arm's radius below a quarter of it.
    """

    certified_wrong_winner: int = 0
    gap_exceeds_width: int = 0
    width_floor_broken: int = 0

    def total(self) -> int:
        return self.certified_wrong_winner + self.gap_exceeds_width + self.width_floor_broken


@dataclass
class RunResult:
    """Everything recorded from one seeded run."""

    actions: np.ndarray
    cumulative_regret: np.ndarray
    pull_counts: np.ndarray
    certification_round: int | None
    certified_arm: int | None
    certified_correct: bool | None
    confidence_event_held: bool | None
    diagnostics: DiagnosticCounters | None
    seed: int

    @property
    def final_regret(self) -> float:
        return float(self.cumulative_regret[-1])


def run(
    instance: BanditInstance,
    policy_name: str,
    horizon: int,
    seed: int,
    diagnostics: bool = False,
) -> RunResult:
    """One seeded run of ``policy_name`` on ``instance`` over ``horizon`` rounds."""
    mu = instance.means
    n_arms, n_objectives = mu.shape
    if horizon < n_arms:
        raise ValueError(f"horizon {horizon} shorter than the warm start over {n_arms} arms")

    stats = analyze(mu)
    gaps = stats.pareto_gaps
    front = set(stats.pareto_set)
    winners = stats.objective_winners
    champion = stats.champion_objective
    champion_gap = stats.champion_gap

    policy = make_policy(policy_name, n_arms, n_objectives, horizon)
    reward_rng, tie_rng = run_generators(seed)
    bonus = 2.0 * math.log(horizon)

    actions = np.empty(horizon, dtype=np.int64)
    cumulative = np.empty(horizon)
    running = 0.0
    certification_round: int | None = None
    counters = DiagnosticCounters() if diagnostics else None
    confidence_held: bool | None = True if diagnostics else None

    for t in range(1, horizon + 1):
        arm = policy.decide(t, tie_rng)
        record = policy.last_round

        if record.kind == "certify":
            certification_round = t

        if diagnostics and t > n_arms:
            if confidence_held:
                radii = np.sqrt(bonus / policy.counts)
                if not np.all(np.abs(policy.mu_hat - mu) <= radii[:, None]):
                    confidence_held = False
            if record.kind == "certify":
                if record.arm != winners[record.objective]:
                    counters.certified_wrong_winner += 1
            elif record.kind == "explore":
                arm_radius = record.radii[arm]
                if gaps[arm] > 4.0 * arm_radius:
                    counters.gap_exceeds_width += 1
                champion_width = (
                    record.radii[record.leaders[champion]]
                    + record.radii[record.runners_up[champion]]
                )
                if champion_width < 0.5 * champion_gap or arm_radius < 0.25 * champion_gap:
                    counters.width_floor_broken += 1

        policy.observe(arm, sample(instance, arm, reward_rng))
        actions[t - 1] = arm
        running += gaps[arm]
        cumulative[t - 1] = running

    certified_arm = getattr(policy, "certified_arm", None)
    return RunResult(
        actions=actions,
        cumulative_regret=cumulative,
        pull_counts=policy.counts.copy(),
        certification_round=certification_round,
        certified_arm=certified_arm,
        certified_correct=(certified_arm in front) if certified_arm is not None else None,
        confidence_event_held=confidence_held,
        diagnostics=counters,
        seed=seed,
    )


@dataclass
class BatchSummary:
    """Order-independent aggregate of a batch of identically configured runs."""

    instance_label: str
    policy: str
    horizon: int
    runs: int
    regret_mean: float
    regret_std: float
    certification_rate: float
    mean_certification_round: float | None
    mean_trajectory: np.ndarray
    final_regrets: np.ndarray
    certification_rounds: tuple[int | None, ...]
    confidence_event_rate: float | None
    diagnostics: DiagnosticCounters | None


def _run_task(args) -> RunResult:
    instance, policy_name, horizon, seed, diagnostics = args
    return run(instance, policy_name, horizon, seed, diagnostics)


def summarize(instance_label: str, policy_name: str, horizon: int, results: list[RunResult]) -> BatchSummary:
    """Aggregate run results in run-index order (bit-reproducible)."""
    finals = np.array([r.final_regret for r in results])
    cert_rounds = tuple(r.certification_round for r in results)
    certified_ok = [
        r.certification_round is not None and bool(r.certified_correct) for r in results
    ]
    rounds = [r.certification_round for r in results if r.certification_round is not None]
    trajectories = np.stack([r.cumulative_regret for r in results])

    with_diag = [r for r in results if r.diagnostics is not None]
    if with_diag:
        totals = DiagnosticCounters(
            certified_wrong_winner=sum(r.diagnostics.certified_wrong_winner for r in with_diag),
            gap_exceeds_width=sum(r.diagnostics.gap_exceeds_width for r in with_diag),
            width_floor_broken=sum(r.diagnostics.width_floor_broken for r in with_diag),
        )
        held_rate = float(np.mean([bool(r.confidence_event_held) for r in with_diag]))
    else:
        totals = None
        held_rate = None

    return BatchSummary(
        instance_label=instance_label,
        policy=policy_name,
        horizon=horizon,
        runs=len(results),
        regret_mean=float(finals.mean()),
        regret_std=float(finals.std(ddof=1)) if len(results) > 1 else 0.0,
        certification_rate=float(np.mean(certified_ok)),
        mean_certification_round=float(np.mean(rounds)) if rounds else None,
        mean_trajectory=trajectories.mean(axis=0),
        final_regrets=finals,
        certification_rounds=cert_rounds,
        confidence_event_rate=held_rate,
        diagnostics=totals,
    )


def batch(
    instance: BanditInstance,
    policy_name: str,
    horizon: int,
    runs: int,
    base_seed: int,
    *,
    parallelism: int = 1,
    diagnostics: bool = False,
    return_runs: bool = False,
):
    """Execute ``runs`` independent seeded runs and aggregate them.

    Run ``i`` uses ``run_seed(base_seed, i)``; aggregation is in run-index
    order, so the summary is bit-identical for any parallelism degree.
    Returns the summary, or ``(summary, results)`` with ``return_runs``.
    """
    if runs < 1:
        raise ValueError(f"need at least one run, got {runs}")
    if parallelism < 1:
        raise ValueError(f"parallelism must be positive, got {parallelism}")
    seeds = [run_seed(base_seed, i) for i in range(runs)]
    tasks = [(instance, policy_name, horizon, s, diagnostics) for s in seeds]
    if parallelism > 1 and runs > 1:
        with ProcessPoolExecutor(max_workers=min(parallelism, runs)) as pool:
            results = list(pool.map(_run_task, tasks))
    else:
        results = [_run_task(task) for task in tasks]
    summary = summarize(instance.label, policy_name, horizon, results)
    return (summary, results) if return_runs else summary


@dataclass
class TrajectoryTable:
    """Per-round averages across runs, for trajectory plots."""

    rounds: np.ndarray
    mean_cumulative_regret: np.ndarray
    certification_fraction: np.ndarray
    median_certification_round: float | None


def trajectory_export(results: list[RunResult]) -> TrajectoryTable:
    """Per-round mean regret and fraction of runs certified by each round."""
    if not results:
        raise ValueError("need at least one run result")
    horizon = results[0].cumulative_regret.shape[0]
    if any(r.cumulative_regret.shape[0] != horizon for r in results):
        raise ValueError("all runs must share one horizon")
    mean_curve = np.stack([r.cumulative_regret for r in results]).mean(axis=0)
    certified_by = np.zeros(horizon)
    rounds = [r.certification_round for r in results if r.certification_round is not None]
    for cr in rounds:
        certified_by[cr - 1 :] += 1.0
    certified_by /= len(results)
    return TrajectoryTable(
        rounds=np.arange(1, horizon + 1),
        mean_cumulative_regret=mean_curve,
        certification_fraction=certified_by,
        median_certification_round=float(np.median(rounds)) if rounds else None,
    )

"""Multi-objective multi-armed bandits under Pareto regret.

Exact Pareto geometry and regret-scale calculators (:mod:`momab.pareto`),
Bernoulli instance families with seeded sampling (:mod:`momab.environments`),
the width-guided first-certification UCB policy and the Pareto UCB1 baseline
(:mod:`momab.policies`), a seed-reproducible Monte-Carlo harness
(:mod:`momab.simulation`), and a CSV-emitting command line
(:mod:`momab.cli`).
"""

from .environments import (
    BanditInstance,
    duplicated_bernoulli,
    instance_from_dict,
    instance_to_dict,
    run_generators,
    run_seed,
    sample,
    synthetic_family,
)
from .pareto import (
    CpucbCoefficient,
    InstanceAnalytics,
    WIDTH_GUIDED_CONSTANT,
    analyze,
    bernoulli_kl,
    cpucb_coefficient,
    cumulative_pareto_regret,
    lower_bound_constant,
    non_dominated,
    pareto_gap,
    pareto_set,
    strictly_dominates,
    theorem1_bound,
)
from .policies import ParetoUCB1, Policy, RoundRecord, WidthGuidedUCB, make_policy
from .simulation import (
    BatchSummary,
    DiagnosticCounters,
    RunResult,
    TrajectoryTable,
    batch,
    run,
    summarize,
    trajectory_export,
)

__version__ = "0.1.0"

__all__ = [
    "BanditInstance",
    "BatchSummary",
    "CpucbCoefficient",
    "DiagnosticCounters",
    "InstanceAnalytics",
    "ParetoUCB1",
    "Policy",
    "RoundRecord",
    "RunResult",
    "TrajectoryTable",
    "WIDTH_GUIDED_CONSTANT",
    "WidthGuidedUCB",
    "analyze",
    "batch",
    "bernoulli_kl",
    "cpucb_coefficient",
    "cumulative_pareto_regret",
    "duplicated_bernoulli",
    "instance_from_dict",
    "instance_to_dict",
    "lower_bound_constant",
    "make_policy",
    "non_dominated",
    "pareto_gap",
    "pareto_set",
    "run",
    "run_generators",
    "run_seed",
    "sample",
    "strictly_dominates",
    "summarize",
    "synthetic_family",
    "theorem1_bound",
    "trajectory_export",
]

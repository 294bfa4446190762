"""Compare the width-guided policy against Pareto UCB1 on two family settings.

Pareto UCB1 keeps sampling uniformly from the empirical front of optimistic
index vectors, so it pays for every dominated arm that optimism keeps alive.
The width-guided policy only needs one objective to certify.  Small batches
(reduced horizon, a few runs) keep this demo quick; the full-scale numbers
live in the acceptance suite and the CLI sweeps.
"""

from momab import batch, synthetic_family, trajectory_export

HORIZON = 4000
RUNS = 5
SEED = 2024

for delta, m in ((0.12, 1), (0.02, 8)):
    instance = synthetic_family(delta, m)
    wgfc, runs = batch(instance, "wgfc", HORIZON, RUNS, SEED, return_runs=True)
    pucb = batch(instance, "pareto-ucb1", HORIZON, RUNS, SEED)
    table = trajectory_export(runs)
    print(f"{instance.label}:")
    print(f"  width-guided : {wgfc.regret_mean:7.2f} +/- {wgfc.regret_std:5.2f}   "
          f"cert rate {100 * wgfc.certification_rate:.0f}%, "
          f"median certification round {table.median_certification_round:.0f}")
    print(f"  pareto-ucb1  : {pucb.regret_mean:7.2f} +/- {pucb.regret_std:5.2f}   "
          f"(never commits)")
    quarters = [HORIZON // 4, HORIZON // 2, 3 * HORIZON // 4, HORIZON]
    curve = " -> ".join(f"{table.mean_cumulative_regret[q - 1]:.0f}" for q in quarters)
    print(f"  width-guided mean regret at quarter marks: {curve}\n")

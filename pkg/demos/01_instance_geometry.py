"""Walk through the Pareto geometry of the synthetic benchmark family.

The family keeps one objective easy to certify (its winner leads the
runner-up by a 0.55 margin) while letting the crowd of barely dominated arms
grow or move closer to the frontier.  This script prints the quantities that
make that trade-off visible: the Pareto set, per-arm gaps, per-objective
winner margins, and the two closed-form regret coefficients.
"""

import numpy as np

from momab import (
    WIDTH_GUIDED_CONSTANT,
    analyze,
    cpucb_coefficient,
    pareto_gap,
    synthetic_family,
    theorem1_bound,
)

HORIZON = 10_000

instance = synthetic_family(delta=0.02, m=8)
print(f"instance: {instance.label}")
print("mean matrix (first five arms):")
print(np.array2string(instance.means[:5], precision=2))

stats = analyze(instance.means)
print(f"\nPareto set: {list(stats.pareto_set)} "
      f"(arms 0 and 1 are incomparable: each wins one objective)")
print(f"per-arm Pareto gaps: {np.array2string(stats.pareto_gaps, precision=3)}")
print(f"objective winner margins: {np.array2string(stats.objective_gaps, precision=3)}")
print(f"champion objective: {stats.champion_objective} with margin {stats.champion_gap:.2f}")

# The crowd arms sit delta below the frontier on the second objective only;
# shifting any of them up by its gap makes it non-dominated.
print(f"\ncrowd arm gap: {pareto_gap(instance.means, 2):.3f}")
print(f"baseline arm gap: {pareto_gap(instance.means, 12):.3f}")

coeff = cpucb_coefficient(stats, instance.n_arms, instance.n_objectives, HORIZON)
bound = theorem1_bound(stats, instance.n_arms, instance.n_objectives, HORIZON)
print(f"\nnormalized Pareto UCB1 coefficient at T={HORIZON}: {coeff.value:.2f}")
print(f"width-guided leading constant: {WIDTH_GUIDED_CONSTANT:.0f} "
      f"(smaller here: {coeff.exceeds_width_guided_constant})")
print(f"width-guided regret ceiling at T={HORIZON}: {bound:.0f}")

print("\nShrinking the crowd gap inflates the coefficient while the champion margin stays put:")
for delta in (0.12, 0.08, 0.04, 0.02, 0.01):
    s = analyze(synthetic_family(delta, 1).means)
    c = cpucb_coefficient(s, 20, 2, HORIZON)
    print(f"  delta={delta:5.2f}  champion margin={s.champion_gap:.2f}  coefficient={c.value:6.2f}")

"""Bandit instance constructors and seeded Bernoulli reward sampling.

Two instance families are provided: a two-objective synthetic family with a
fixed certification margin and a tunable crowd of barely dominated arms, and
a duplicated-coordinate Bernoulli family where one arm leads every objective
by the same scalar margin.

Reproducibility contract: all randomness flows through
``numpy.random.Generator`` (PCG64).  Run ``i`` of a batch is seeded with the
first 64-bit word of ``SeedSequence([base_seed, i])``, and each run splits
its seed into a reward stream and a tie-breaking stream via
``SeedSequence(seed).spawn(2)``.  Identical seeds give bit-identical streams
on every platform.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .pareto import as_mean_matrix

INDEPENDENT_BERNOULLI = "independent-bernoulli"
DUPLICATED_BERNOULLI = "duplicated-bernoulli"
REWARD_MODELS = (INDEPENDENT_BERNOULLI, DUPLICATED_BERNOULLI)


@dataclass(frozen=True)
class BanditInstance:
    """An arm-mean matrix plus the reward model that generates observations."""

    means: np.ndarray
    reward_model: str = INDEPENDENT_BERNOULLI
    label: str = ""

    def __post_init__(self):
        mu = as_mean_matrix(self.means)
        if self.reward_model not in REWARD_MODELS:
            raise ValueError(f"unknown reward model {self.reward_model!r}, expected one of {REWARD_MODELS}")
        if self.reward_model == DUPLICATED_BERNOULLI and not np.all(mu == mu[:, :1]):
            raise ValueError("duplicated-bernoulli requires identical coordinates within each mean vector")
        mu = mu.copy()
        mu.flags.writeable = False
        object.__setattr__(self, "means", mu)

    @property
    def n_arms(self) -> int:
        return self.means.shape[0]

    @property
    def n_objectives(self) -> int:
        return self.means.shape[1]


def synthetic_family(
    delta: float,
    m: int,
    n_arms: int = 20,
    *,
    p: float = 0.25,
    g: float = 0.55,
    eta: float = 0.20,
    u: float = 0.05,
) -> BanditInstance:
    """Two-objective family with two frontier arms and ``m`` near-frontier arms.

    Arm 0 is ``(p+g, p)`` and arm 1 is ``(p, p+g)``; they are incomparable and
    form the Pareto set.  Arms ``2 .. m+1`` are crowd arms ``(p-eta, p+g-delta)``,
    each dominated by arm 1 with Pareto gap ``delta``.  Remaining arms are the
    low baseline ``(u, u)``.  The first objective's winner margin stays ``g``
    for every ``(delta, m)``, so the certification scale is fixed while the
    dominated-arm gap structure varies.
    """
    if m < 0:
        raise ValueError(f"crowd size must be nonnegative, got {m}")
    if delta <= 0.0:
        raise ValueError(f"crowd gap must be positive, got {delta}")
    if n_arms < 2 + m:
        raise ValueError(f"need at least {2 + m} arms for m={m}, got {n_arms}")
    rows = [(p + g, p), (p, p + g)]
    rows.extend((p - eta, p + g - delta) for _ in range(m))
    rows.extend((u, u) for _ in range(n_arms - 2 - m))
    mu = np.array(rows, dtype=float)
    if np.any(mu < 0.0) or np.any(mu > 1.0):
        raise ValueError("family parameters push some mean outside [0, 1]")
    return BanditInstance(
        means=mu,
        reward_model=INDEPENDENT_BERNOULLI,
        label=f"synthetic(delta={delta:g}, m={m}, K={n_arms})",
    )


def duplicated_bernoulli(n_arms: int, n_objectives: int, scalar_gap: float) -> BanditInstance:
    """One arm at ``1/2 + scalar_gap`` on every objective, the rest at ``1/2``.

    Each pull draws a single Bernoulli sample and copies it across all
    coordinates, so the instance carries exactly the information of a scalar
    Bernoulli bandit.
    """
    if n_arms < 2:
        raise ValueError(f"need at least two arms, got {n_arms}")
    if n_objectives < 1:
        raise ValueError(f"need at least one objective, got {n_objectives}")
    if not 0.0 < scalar_gap <= 0.25:
        raise ValueError(f"scalar gap must lie in (0, 1/4], got {scalar_gap}")
    mu = np.full((n_arms, n_objectives), 0.5)
    mu[0, :] = 0.5 + scalar_gap
    return BanditInstance(
        means=mu,
        reward_model=DUPLICATED_BERNOULLI,
        label=f"duplicated(K={n_arms}, d={n_objectives}, gap={scalar_gap:g})",
    )


def sample(instance: BanditInstance, arm: int, rng: np.random.Generator) -> np.ndarray:
    """One reward vector for ``arm``, with entries in {0, 1}.

    Independent-bernoulli consumes exactly ``d`` uniform draws (one per
    coordinate); duplicated-bernoulli consumes exactly one and copies it, so
    reward streams are position-deterministic for any pull sequence.
    """
    if not 0 <= arm < instance.n_arms:
        raise ValueError(f"arm index {arm} out of range for {instance.n_arms} arms")
    mu = instance.means[arm]
    if instance.reward_model == DUPLICATED_BERNOULLI:
        z = float(rng.random() < mu[0])
        return np.full(instance.n_objectives, z)
    return (rng.random(instance.n_objectives) < mu).astype(float)


def run_seed(base_seed: int, run_index: int) -> int:
    """64-bit seed of run ``run_index`` within a batch seeded by ``base_seed``."""
    if base_seed < 0 or run_index < 0:
        raise ValueError("base seed and run index must be nonnegative")
    ss = np.random.SeedSequence([int(base_seed), int(run_index)])
    return int(ss.generate_state(1, np.uint64)[0])


def run_generators(seed: int) -> tuple[np.random.Generator, np.random.Generator]:
    """(reward stream, tie-break stream) generator pair for one run."""
    reward_ss, tie_ss = np.random.SeedSequence(int(seed)).spawn(2)
    return np.random.default_rng(reward_ss), np.random.default_rng(tie_ss)


def instance_to_dict(instance: BanditInstance) -> dict:
    """Plain-data form of an instance (round-trips through YAML/JSON)."""
    return {
        "label": instance.label,
        "reward_model": instance.reward_model,
        "means": [[float(x) for x in row] for row in instance.means],
    }


def instance_from_dict(spec: dict) -> BanditInstance:
    """Build an instance from a configuration mapping.

    Either a family description, e.g. ``{"family": "synthetic", "delta": 0.02,
    "m": 8}`` or ``{"family": "duplicated", "K": 20, "d": 2, "delta_sc":
    0.25}``, or an explicit matrix ``{"means": [[...], ...], "reward_model":
    ..., "label": ...}``.
    """
    if not isinstance(spec, dict):
        raise ValueError(f"instance spec must be a mapping, got {type(spec).__name__}")
    family = spec.get("family")
    if family == "synthetic":
        return synthetic_family(
            delta=float(spec["delta"]),
            m=int(spec["m"]),
            n_arms=int(spec.get("K", 20)),
            p=float(spec.get("p", 0.25)),
            g=float(spec.get("g", 0.55)),
            eta=float(spec.get("eta", 0.20)),
            u=float(spec.get("u", 0.05)),
        )
    if family == "duplicated":
        return duplicated_bernoulli(
            n_arms=int(spec.get("K", 20)),
            n_objectives=int(spec.get("d", 2)),
            scalar_gap=float(spec["delta_sc"]),
        )
    if family is not None:
        raise ValueError(f"unknown instance family {family!r}")
    if "means" not in spec:
        raise ValueError("instance spec needs either a 'family' or an explicit 'means' matrix")
    return BanditInstance(
        means=np.asarray(spec["means"], dtype=float),
        reward_model=spec.get("reward_model", INDEPENDENT_BERNOULLI),
        label=str(spec.get("label", "custom")),
    )

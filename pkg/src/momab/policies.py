"""Arm-selection policies: width-guided first-certification UCB and Pareto UCB1.

Both policies share the same interaction contract: construct with
``(n_arms, n_objectives, horizon)``, then alternate ``decide(t, rng)`` and
``observe(arm, reward)`` for rounds ``t = 1 .. horizon``.  Rounds are 1-based,
arm and objective indices 0-based.  Decisions may depend only on past
observations and the supplied generator.

Tie-breaking contract: every argmax over exactly equal scores (UCB leaders,
runners-up, pair widths, pair endpoints, front membership) is resolved
uniformly at random, and a generator draw is consumed only when there are at
least two tied candidates.  Within a width-guided round, draws happen in a
fixed order: leader then runner-up for each objective in index order, then
the width tie, then the endpoint tie.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .pareto import non_dominated


@dataclass
class RoundRecord:
    """Decision internals of the most recent ``decide`` call.

    ``kind`` is one of ``"warm"`` (initial sweep), ``"committed"`` (replaying
    a stored certified arm), ``"certify"`` (the round a leader is certified),
    ``"explore"`` (width-guided top-two sampling), or ``"front"`` (Pareto
    UCB1 selection).  Array fields are filled only where the decision path
    computes them.
    """

    kind: str
    arm: int
    radii: np.ndarray | None = None
    upper: np.ndarray | None = None
    lower: np.ndarray | None = None
    leaders: np.ndarray | None = None
    runners_up: np.ndarray | None = None
    widths: np.ndarray | None = None
    objective: int | None = None
    front: np.ndarray | None = None


def _argmax_tie_random(values: np.ndarray, rng: np.random.Generator) -> int:
    """Index of the maximum; exact ties resolved uniformly at random."""
    ties = np.flatnonzero(values == values.max())
    if ties.size == 1:
        return int(ties[0])
    return int(ties[rng.integers(ties.size)])


class Policy:
    """Shared pull-count and running-mean bookkeeping for bandit policies."""

    name = "policy"

    def __init__(self, n_arms: int, n_objectives: int, horizon: int):
        if n_arms < 1 or n_objectives < 1:
            raise ValueError(f"need n_arms >= 1 and n_objectives >= 1, got {n_arms}, {n_objectives}")
        if horizon < n_arms:
            raise ValueError(f"horizon {horizon} shorter than the warm start over {n_arms} arms")
        self.n_arms = int(n_arms)
        self.n_objectives = int(n_objectives)
        self.horizon = int(horizon)
        self.counts = np.zeros(self.n_arms, dtype=np.int64)
        self.mu_hat = np.zeros((self.n_arms, self.n_objectives))
        self.last_round: RoundRecord | None = None
        self._awaiting: int | None = None

    def decide(self, t: int, rng: np.random.Generator) -> int:
        raise NotImplementedError

    def observe(self, arm: int, reward) -> None:
        """Record the reward of the arm returned by the last ``decide``."""
        if self._awaiting is None:
            raise ValueError("observe called without a pending decision")
        if arm != self._awaiting:
            raise ValueError(f"observed arm {arm} does not match decided arm {self._awaiting}")
        x = np.asarray(reward, dtype=float)
        if x.shape != (self.n_objectives,):
            raise ValueError(f"reward must have shape ({self.n_objectives},), got {x.shape}")
        self.counts[arm] += 1
        self.mu_hat[arm] += (x - self.mu_hat[arm]) / self.counts[arm]
        self._awaiting = None

    def _check_round(self, t: int) -> None:
        if not 1 <= t <= self.horizon:
            raise ValueError(f"round {t} outside 1..{self.horizon}")


class WidthGuidedUCB(Policy):
    """Fixed-horizon UCB that commits forever to the first certified leader.

    After pulling each arm once, every round builds per-arm confidence radii
    ``sqrt(2*ln(horizon)/counts)`` and, per objective, the top-two arms by
    upper confidence bound.  If on some objective the leader's lower bound
    has reached the runner-up's upper bound, that leader is certified and
    played for the rest of the horizon.  Otherwise the policy picks the
    objective whose top-two pair has the largest summed radius and pulls the
    pair's more uncertain endpoint.
    """

    name = "wgfc"

    def __init__(self, n_arms: int, n_objectives: int, horizon: int):
        super().__init__(n_arms, n_objectives, horizon)
        self.certified_arm: int | None = None
        self.certified_objective: int | None = None
        self._bonus = 2.0 * math.log(self.horizon)

    def decide(self, t: int, rng: np.random.Generator) -> int:
        self._check_round(t)
        if t <= self.n_arms:
            arm = t - 1
            self.last_round = RoundRecord(kind="warm", arm=arm)
        elif self.certified_arm is not None:
            arm = self.certified_arm
            self.last_round = RoundRecord(kind="committed", arm=arm, objective=self.certified_objective)
        else:
            arm = self._race(rng)
        self._awaiting = arm
        return arm

    def _race(self, rng: np.random.Generator) -> int:
        radii = np.sqrt(self._bonus / self.counts)
        upper = self.mu_hat + radii[:, None]
        lower = self.mu_hat - radii[:, None]

        d = self.n_objectives
        leaders = np.empty(d, dtype=np.int64)
        runners_up = np.empty(d, dtype=np.int64)
        widths = np.empty(d)
        for j in range(d):
            column = upper[:, j]
            lead = _argmax_tie_random(column, rng)
            rest = column.copy()
            rest[lead] = -np.inf
            runner = _argmax_tie_random(rest, rng)
            leaders[j] = lead
            runners_up[j] = runner
            widths[j] = radii[lead] + radii[runner]

        for j in range(d):
            lead, runner = int(leaders[j]), int(runners_up[j])
            if lower[lead, j] >= upper[runner, j]:
                self.certified_arm = lead
                self.certified_objective = j
                self.last_round = RoundRecord(
                    kind="certify", arm=lead, radii=radii, upper=upper, lower=lower,
                    leaders=leaders, runners_up=runners_up, widths=widths, objective=j,
                )
                return lead

        j_t = _argmax_tie_random(widths, rng)
        pair = (int(leaders[j_t]), int(runners_up[j_t]))
        arm = pair[_argmax_tie_random(radii[list(pair)], rng)]
        self.last_round = RoundRecord(
            kind="explore", arm=arm, radii=radii, upper=upper, lower=lower,
            leaders=leaders, runners_up=runners_up, widths=widths, objective=int(j_t),
        )
        return arm


class ParetoUCB1(Policy):
    """Uniform sampling from the Pareto front of optimistic index vectors.

    After the warm start, each arm gets the index vector ``mu_hat +
    sqrt(2*ln(t*(d*K)^(1/4))/counts)`` on every objective, and one arm is
    drawn uniformly from the non-dominated set of those vectors.  The
    anytime radius uses the arm count as an upper bound for the unknown
    front size.
    """

    name = "pareto-ucb1"

    def __init__(self, n_arms: int, n_objectives: int, horizon: int):
        super().__init__(n_arms, n_objectives, horizon)
        self._dim_term = 0.25 * math.log(self.n_objectives * self.n_arms)

    def decide(self, t: int, rng: np.random.Generator) -> int:
        self._check_round(t)
        if t <= self.n_arms:
            arm = t - 1
            self.last_round = RoundRecord(kind="warm", arm=arm)
        else:
            radii = np.sqrt(2.0 * (math.log(t) + self._dim_term) / self.counts)
            index = self.mu_hat + radii[:, None]
            front = non_dominated(index)
            if front.size == 1:
                arm = int(front[0])
            else:
                arm = int(front[rng.integers(front.size)])
            self.last_round = RoundRecord(kind="front", arm=arm, radii=radii, upper=index, front=front)
        self._awaiting = arm
        return arm


POLICIES = {WidthGuidedUCB.name: WidthGuidedUCB, ParetoUCB1.name: ParetoUCB1}


def make_policy(name: str, n_arms: int, n_objectives: int, horizon: int) -> Policy:
    """Instantiate a policy by its registered name."""
    try:
        cls = POLICIES[name]
    except KeyError:
        raise ValueError(f"unknown policy {name!r}, expected one of {sorted(POLICIES)}") from None
    return cls(n_arms, n_objectives, horizon)

import numpy as np
from hypothesis import HealthCheck, settings

settings.register_profile(
    "ci", derandomize=True, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("ci")


def epsilon_scan_gap(means, arm, coarse=0.05, tol=1e-12):
    """Brute-force Pareto gap: scan the uniform shift until undominated.

    Sweeps the shift over a coarse grid to bracket the first undominated
    value, then bisects the bracket using only the dominance predicate.
    Deliberately independent of the closed-form implementation under test.
    """
    mu = np.asarray(means, dtype=float)

    def dominated(eps):
        lifted = mu[arm] + eps
        ge = np.all(mu >= lifted, axis=1)
        gt = np.any(mu > lifted, axis=1)
        return bool(np.any(ge & gt))

    if not dominated(0.0):
        return 0.0
    eps = coarse
    while dominated(eps):
        eps += coarse
    lo, hi = eps - coarse, eps
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if dominated(mid):
            lo = mid
        else:
            hi = mid
    return hi


def random_mean_matrices(count, seed, max_arms=6, max_objectives=4):
    """Deterministic stream of small random instances for oracle checks."""
    rng = np.random.default_rng(seed)
    for _ in range(count):
        n_arms = int(rng.integers(1, max_arms + 1))
        n_objectives = int(rng.integers(1, max_objectives + 1))
        yield rng.random((n_arms, n_objectives))

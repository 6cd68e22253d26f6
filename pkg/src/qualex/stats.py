"""Statistical utilities: five-number summaries, Spearman correlation
with a bootstrap interval, a no-intercept probit fit, and the
serial-number (German tank) population estimate."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import log_ndtr, ndtri

__all__ = [
    "FiveNumberSummary",
    "ProbitFit",
    "TankEstimate",
    "BootstrapCI",
    "five_number_summary",
    "spearman_rho",
    "bootstrap_ci",
    "probit_fit",
    "probit_loglik",
    "german_tank_point",
    "german_tank_ci",
    "german_tank_estimate",
]


@dataclass(frozen=True)
class FiveNumberSummary:
    min: float
    q1: float
    median: float
    q3: float
    max: float

    def astuple(self):
        return (self.min, self.q1, self.median, self.q3, self.max)


@dataclass(frozen=True)
class ProbitFit:
    beta: float
    se: float
    ci_low: float
    ci_high: float
    converged: bool
    n: int
    separated: bool = False
    loglik: float = float("nan")


@dataclass(frozen=True)
class TankEstimate:
    point: float
    ci_low: float
    ci_high: float
    m: int
    k: int


@dataclass(frozen=True)
class BootstrapCI:
    low: float
    high: float
    replicates: int
    skipped: int


def five_number_summary(values) -> FiveNumberSummary:
    """Min, quartiles and max of a non-empty sample.

    Quartiles interpolate linearly between order statistics at positions
    1 + (n-1)p, the convention numpy calls "linear".
    """
    arr = np.asarray(values, dtype=float)
    if arr.size == 0:
        raise ValueError("five_number_summary needs at least one value")
    q = np.quantile(arr, [0.0, 0.25, 0.5, 0.75, 1.0])
    return FiveNumberSummary(*(float(v) for v in q))


def _midranks(values):
    arr = np.asarray(values, dtype=float)
    order = np.argsort(arr, kind="mergesort")
    ranks = np.empty(arr.size, dtype=float)
    sorted_vals = arr[order]
    i = 0
    while i < arr.size:
        j = i
        while j + 1 < arr.size and sorted_vals[j + 1] == sorted_vals[i]:
            j += 1
        ranks[order[i : j + 1]] = (i + j) / 2.0 + 1.0
        i = j + 1
    return ranks


def spearman_rho(x, y):
    """Rank correlation: Pearson correlation of midranks.

    Ties get average ranks.  Returns None when either side is constant,
    since ranks then have zero variance and the coefficient is
    undefined.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.size != y.size:
        raise ValueError("x and y must have equal length")
    if x.size < 3:
        raise ValueError("need at least 3 observations")
    if np.all(x == x[0]) or np.all(y == y[0]):
        return None
    rx = _midranks(x)
    ry = _midranks(y)
    rx -= rx.mean()
    ry -= ry.mean()
    return float(np.dot(rx, ry) / math.sqrt(np.dot(rx, rx) * np.dot(ry, ry)))


def bootstrap_ci(x, y, statistic, level=0.95, b=2000, seed=0) -> BootstrapCI:
    """Percentile bootstrap interval for a paired statistic.

    Resamples (x_i, y_i) pairs with replacement.  Replicates where the
    statistic is undefined (None or NaN) are skipped and counted.  Each
    replicate draws from its own spawned RNG, so the result does not
    depend on evaluation order.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.size != y.size:
        raise ValueError("x and y must have equal length")
    if x.size < 10:
        raise ValueError("need at least 10 pairs to bootstrap")
    if not 0 < level < 1:
        raise ValueError("level must be in (0, 1)")
    children = np.random.SeedSequence(seed).spawn(b)
    stats, skipped = [], 0
    for child in children:
        rng = np.random.default_rng(child)
        idx = rng.integers(0, x.size, x.size)
        value = statistic(x[idx], y[idx])
        if value is None or (isinstance(value, float) and math.isnan(value)):
            skipped += 1
            continue
        stats.append(value)
    if not stats:
        raise ValueError("all bootstrap replicates were degenerate")
    alpha = 1.0 - level
    low, high = np.quantile(np.asarray(stats), [alpha / 2.0, 1.0 - alpha / 2.0])
    return BootstrapCI(float(low), float(high), len(stats), skipped)


def probit_loglik(beta, x, y):
    """Log-likelihood, gradient and Hessian of the no-intercept probit.

    The model is Pr(y=1 | x) = Phi(beta * x).  All three quantities are
    evaluated analytically; the tail ratios phi/Phi are computed in log
    space so large |beta * x| stays finite.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    z = beta * x
    log_phi = -0.5 * z * z - 0.5 * math.log(2.0 * math.pi)
    log_cdf = log_ndtr(z)
    log_sf = log_ndtr(-z)
    ll = float(np.sum(y * log_cdf + (1.0 - y) * log_sf))
    r1 = np.exp(log_phi - log_cdf)
    r0 = np.exp(log_phi - log_sf)
    core = y * r1 - (1.0 - y) * r0
    grad = float(np.sum(x * core))
    hess = float(np.sum(x * x * (-z * core - (y * r1 * r1 + (1.0 - y) * r0 * r0))))
    return ll, grad, hess


def _perfectly_separated(x, y):
    pos = x[y == 1]
    neg = x[y == 0]
    if pos.size == 0 or neg.size == 0:
        return False
    return bool(pos.min() > neg.max() or pos.max() < neg.min())


def probit_fit(ages, outcomes, level=0.95, max_iter=50, tol=1e-10) -> ProbitFit:
    """Maximum-likelihood fit of Pr(qualified | age) = Phi(beta * age).

    Newton iteration with analytic derivatives and step halving; the
    standard error comes from the observed information and the interval
    is the Wald interval at the given level.
    """
    x = np.asarray(ages, dtype=float)
    y = np.asarray(outcomes, dtype=float)
    if x.size != y.size:
        raise ValueError("ages and outcomes must have equal length")
    if x.size < 10:
        raise ValueError("need at least 10 observations")
    if not (np.any(y == 1) and np.any(y == 0)):
        raise ValueError("need both positive and negative outcomes")

    separated = _perfectly_separated(x, y)
    beta = 0.0
    ll, grad, hess = probit_loglik(beta, x, y)
    converged = False
    for _ in range(max_iter):
        if hess >= 0:
            break
        step = -grad / hess
        # halve until the likelihood actually improves
        for _ in range(40):
            candidate = beta + step
            ll_new, grad_new, hess_new = probit_loglik(candidate, x, y)
            if ll_new >= ll - 1e-12:
                break
            step /= 2.0
        else:
            break
        moved = abs(candidate - beta)
        beta, ll, grad, hess = candidate, ll_new, grad_new, hess_new
        scale = max(1.0, abs(beta))
        if abs(grad) < tol * x.size or moved < 1e-14 * scale:
            converged = True
            break
    se = 1.0 / math.sqrt(-hess) if hess < 0 else float("inf")
    zcrit = float(-ndtri((1.0 - level) / 2.0))
    return ProbitFit(
        beta=float(beta),
        se=float(se),
        ci_low=float(beta - zcrit * se),
        ci_high=float(beta + zcrit * se),
        converged=converged,
        n=int(x.size),
        separated=separated,
        loglik=ll,
    )


def german_tank_point(m: int, k: int) -> float:
    """Population estimate from the sample maximum m of k serial numbers."""
    if k <= 0 or m <= 0:
        raise ValueError("m and k must be positive")
    if k > m:
        raise ValueError(f"sample size {k} cannot exceed the maximum {m}")
    return m * (1.0 + 1.0 / k) - 1.0


def german_tank_ci(m: int, k: int, level=0.95):
    """Confidence interval for the population size.

    Inverts P(max <= m | N) ~ (m/N)^k in its continuous approximation:
    [m (1-a/2)^(-1/k), m (a/2)^(-1/k)] with a = 1 - level.
    """
    if k <= 0 or m <= 0:
        raise ValueError("m and k must be positive")
    if k > m:
        raise ValueError(f"sample size {k} cannot exceed the maximum {m}")
    if not 0 < level < 1:
        raise ValueError("level must be in (0, 1)")
    alpha = 1.0 - level
    low = m * (1.0 - alpha / 2.0) ** (-1.0 / k)
    high = m * (alpha / 2.0) ** (-1.0 / k)
    return low, high


def german_tank_estimate(m: int, k: int, level=0.95) -> TankEstimate:
    """Point estimate and interval in one record."""
    low, high = german_tank_ci(m, k, level)
    return TankEstimate(german_tank_point(m, k), low, high, m, k)

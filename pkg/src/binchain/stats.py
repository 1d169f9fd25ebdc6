"""Estimators turning replicated sample windows into pass/fail evidence.

Replicas are independent runs of the sampler; sites inside one window are
dependent, so standard errors are always computed across replicas.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import EmptyInput, InsufficientLags, LagTooLarge, SupportMismatch


@dataclass(frozen=True)
class EstimateWithError:
    value: float
    stderr: float
    count: int

    def __post_init__(self):
        if self.stderr < 0 or self.count < 1:
            raise ValueError("invalid estimate")

    def within(self, target, n_sigma=3.0, floor=0.0):
        return abs(self.value - target) <= max(n_sigma * self.stderr, floor)


def _as_matrix(windows):
    if not windows:
        raise EmptyInput("no sample windows")
    rows = [w.values if hasattr(w, "values") else tuple(w) for w in windows]
    length = len(rows[0])
    if any(len(r) != length for r in rows):
        raise ValueError("windows must share a common length")
    return np.array(rows, dtype=np.int8)


def empirical_window_distribution(windows, w):
    """Frequencies of the leading w symbols across replicas.

    Returns a dict mapping +-1 tuples to EstimateWithError; frequencies
    sum to one.
    """
    data = _as_matrix(windows)
    if w > data.shape[1]:
        raise LagTooLarge("w exceeds window length")
    n = data.shape[0]
    counts = {}
    for row in data[:, :w]:
        key = tuple(int(v) for v in row)
        counts[key] = counts.get(key, 0) + 1
    out = {}
    for key, c in counts.items():
        p = c / n
        out[key] = EstimateWithError(p, math.sqrt(p * (1.0 - p) / n), n)
    return out


def autocovariance(windows, k):
    """Estimate of E[X_n X_(n-k)] with a replica-level standard error."""
    data = _as_matrix(windows).astype(float)
    n, length = data.shape
    if k >= length:
        raise LagTooLarge("lag %d needs window length > %d" % (k, k))
    if k == 0:
        return EstimateWithError(1.0, 0.0, n)
    per_replica = (data[:, k:] * data[:, :-k]).mean(axis=1)
    value = float(per_replica.mean())
    stderr = float(per_replica.std(ddof=1) / math.sqrt(n)) if n > 1 else 0.0
    return EstimateWithError(value, stderr, n)


def yule_walker_residual(model, covariances, k):
    """Residual c_k - sum_j theta_j c_(|k-j|) with propagated error.

    `covariances` maps lag -> EstimateWithError (lag 0 should be the exact
    unit estimate).  A compatible stationary process makes the residual
    zero for every k >= 1.
    """
    if not model.finite_support:
        raise ValueError("residuals are defined for finite-support models")
    m = model.max_lag
    needed = {abs(k - j) for j in range(1, m + 1)} | {k}
    missing = needed - set(covariances)
    if missing:
        raise InsufficientLags("missing covariance lags %s" % sorted(missing))
    value = covariances[k].value
    var = covariances[k].stderr ** 2
    for j in range(1, m + 1):
        c = covariances[abs(k - j)]
        value -= model.theta(j) * c.value
        var += (model.theta(j) * c.stderr) ** 2
    count = min(c.count for c in covariances.values())
    return EstimateWithError(value, math.sqrt(var), count)


def tv_distance(dist_a, dist_b):
    """Total variation distance between two finite distributions.

    Accepts dicts of probabilities or of EstimateWithError.  For binary
    laws this equals |P_a(+1) - P_b(+1)|.
    """

    def val(x):
        return x.value if hasattr(x, "value") else float(x)

    if set(dist_a) != set(dist_b):
        raise SupportMismatch("distributions have different outcome sets")
    return 0.5 * sum(abs(val(dist_a[k]) - val(dist_b[k])) for k in dist_a)


def complete_distribution(dist, outcomes):
    """Extend a frequency dict with zero mass on unobserved outcomes."""
    out = {}
    for key in outcomes:
        x = dist.get(key, 0.0)
        out[key] = x.value if hasattr(x, "value") else float(x)
    return out


def marginal_plus_frequency(windows):
    """Frequency of +1 at the first window site, across replicas."""
    data = _as_matrix(windows)
    n = data.shape[0]
    p = float((data[:, 0] == 1).mean())
    return EstimateWithError(p, math.sqrt(p * (1.0 - p) / n), n)

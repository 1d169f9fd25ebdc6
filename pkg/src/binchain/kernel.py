"""Kernel evaluation and the lag-sampling representation.

The transition probability of the next symbol given the whole past is
1/2 + (g/2) * sum_k theta_k w_(-k).  On a truncated past only an interval
containing the true value can be reported; its half-width is half the
coefficient mass beyond the window.  Sampling from the kernel reduces to
drawing a random lag K with P(K = k) = |theta_k| and copying the past
symbol at that lag, flipped when the coefficient is negative.
"""

from dataclasses import dataclass

import numpy as np

from .coefficients import BiasedModel, validate


@dataclass(frozen=True)
class PastWindow:
    """Finite past w_(-1), w_(-2), ... (most recent first)."""

    values: tuple

    def __post_init__(self):
        if any(v not in (-1, 1) for v in self.values):
            raise ValueError("past symbols must be +1 or -1")
        object.__setattr__(self, "values", tuple(self.values))

    def __len__(self):
        return len(self.values)

    def at(self, k):
        """Symbol at lag k >= 1."""
        return self.values[k - 1]


@dataclass(frozen=True)
class ProbInterval:
    lower: float
    upper: float

    def __post_init__(self):
        if not (0.0 <= self.lower <= self.upper <= 1.0):
            raise ValueError("invalid probability interval [%r, %r]"
                             % (self.lower, self.upper))

    @property
    def width(self):
        return self.upper - self.lower

    def contains(self, p, slack=0.0):
        return self.lower - slack <= p <= self.upper + slack


def kernel_prob(model, g, past):
    """Interval guaranteed to contain p(g | any extension of `past`)."""
    validate(model)
    if g not in (-1, 1):
        raise ValueError("symbol must be +1 or -1")
    n = len(past)
    center = 0.5 + 0.5 * g * sum(
        model.theta(k) * past.at(k) for k in range(1, n + 1)
    )
    half = 0.5 * model.tail(n + 1)
    return ProbInterval(max(0.0, center - half), min(1.0, center + half))


def cdf(model, k):
    """P(K <= k) = 1 - T(k+1) for the lag variable K."""
    return 1.0 - model.tail(k + 1)


def sample_lag(model, u):
    """Invert the lag CDF: smallest k >= 1 with 1 - T(k+1) >= u.

    Exponential doubling to bracket, then binary search on the tail.
    Deterministic in u.
    """
    if cdf(model, 1) >= u:
        return 1
    hi = 2
    while cdf(model, hi) < u:
        hi *= 2
        if hi > 2 ** 62:
            raise RuntimeError("lag CDF never reached u=%r" % u)
    lo = hi // 2  # cdf(lo) < u <= cdf(hi)
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        if cdf(model, mid) >= u:
            hi = mid
        else:
            lo = mid
    return hi


def sample_next(model, past_access, rng):
    """One symbol from the kernel given a lag -> sign accessor.

    Draws the lag, then copies the past sign through the coefficient sign.
    The induced law equals the kernel probability exactly.
    """
    k = sample_lag(model, rng.random())
    return model.sign_theta(k) * past_access(k)


class LagSampler:
    """Vectorizable inverse-CDF sampler for the lag distribution.

    A CDF table covers lags up to a horizon where the remaining mass is
    below `tail_eps`; the rare draws beyond it fall back to the generic
    bisection, so the sampled law is exact, not truncated.
    """

    def __init__(self, model, tail_eps=1e-9, max_table=1 << 20):
        self.model = model
        if model.finite_support:
            horizon = model.max_lag
        else:
            try:
                horizon = min(model.tail_horizon(tail_eps), max_table)
            except RuntimeError:
                # very heavy tails: keep the full table and let the
                # bisection fallback handle draws beyond it
                horizon = max_table
        self._cdf = np.array([cdf(model, k) for k in range(1, horizon + 1)])
        self.horizon = horizon

    def sample(self, u):
        """Lags for a vector of uniforms; same boundary convention as
        sample_lag."""
        u = np.asarray(u)
        ks = np.searchsorted(self._cdf, u, side="left") + 1
        overflow = ks > self.horizon
        if overflow.any():
            ks = ks.astype(np.int64)
            for i in np.flatnonzero(overflow):
                ks[i] = sample_lag(self.model, float(u[i]))
        return ks

    def stream(self, rng, chunk=16, max_chunk=4096):
        """Endless lag stream drawing uniforms from rng in chunks.

        The chunk grows geometrically so short runs waste few draws while
        long runs amortize the vectorized inversion.
        """
        while True:
            for k in self.sample(rng.random(chunk)):
                yield int(k)
            chunk = min(2 * chunk, max_chunk)


class BiasedLagSampler:
    """Lag sampler for a biased model: mass 1 - r0 on lag 0 (stick),
    the rest on the base lags scaled by r0."""

    def __init__(self, bmodel):
        if not isinstance(bmodel, BiasedModel):
            raise TypeError("expected a BiasedModel")
        self.bmodel = bmodel
        self._base = LagSampler(bmodel.base)

    def sample_one(self, rng):
        """A single lag; 0 means the particle sticks."""
        u = rng.random()
        p0 = self.bmodel.prob_stick()
        if u < p0:
            return 0
        # rescale the remaining mass onto the base distribution
        return sample_lag(self.bmodel.base, (u - p0) / self.bmodel.r0)

"""Coefficient sequences for binary linear transition kernels.

A model describes a sequence theta_1, theta_2, ... of signed masses with
sum |theta_k| = 1.  Three variants are supported: an explicit finite
vector, a geometric family |theta_k| = (1-q) q^(k-1), and a power-law
family |theta_k| = k^(-alpha) / Z(alpha).  Parametric families carry a
periodic sign pattern.  The module also decides whether the kernel built
from the model admits a unique compatible process.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    EmptySupportError,
    GcdError,
    NormalizationError,
    ParameterError,
)

NORMALIZATION_TOL = 1e-12

# Direct-summation horizon for the power-law normalizer; the remainder
# beyond it is added via Euler-Maclaurin (error far below 1e-14).
_ZETA_SUM_HORIZON = 10 ** 6
# Prefix sums of k^(-alpha) are cached up to this lag; larger lags use
# the Euler-Maclaurin tail directly, which is accurate there.
_PREFIX_CACHE = 4096


def _power_tail(alpha, k):
    """Sum of m^(-alpha) for m >= k, via Euler-Maclaurin at k.

    Accurate to well below 1e-14 relative error for k >= 64.
    """
    k = float(k)
    integral = k ** (1.0 - alpha) / (alpha - 1.0)
    correction = (
        0.5 * k ** (-alpha)
        + alpha * k ** (-alpha - 1.0) / 12.0
        - alpha * (alpha + 1.0) * (alpha + 2.0) * k ** (-alpha - 3.0) / 720.0
    )
    return integral + correction


@dataclass(frozen=True)
class SignPattern:
    """Periodic sign assignment for parametric families.

    sign(theta_k) = signs[(k-1) mod P] wherever theta_k != 0.
    """

    signs: tuple

    def __post_init__(self):
        if len(self.signs) < 1:
            raise ParameterError("sign pattern must be nonempty")
        if any(s not in (-1, 1) for s in self.signs):
            raise ParameterError("sign pattern entries must be +1 or -1")
        object.__setattr__(self, "signs", tuple(self.signs))

    @property
    def period(self):
        return len(self.signs)

    def at(self, k):
        return self.signs[(k - 1) % len(self.signs)]


class CoefficientModel:
    """Common interface of the three coefficient families."""

    #: True when the support is a finite set of lags.
    finite_support = False

    def abs_theta(self, k):
        raise NotImplementedError

    def sign_theta(self, k):
        raise NotImplementedError

    def theta(self, k):
        return self.sign_theta(k) * self.abs_theta(k)

    def tail(self, k):
        """T(k) = sum of |theta_m| over m >= k."""
        raise NotImplementedError

    def support_gcd(self):
        raise NotImplementedError

    def tail_horizon(self, eps=1e-6):
        """Smallest lag h (up to search limits) with T(h) < eps."""
        h = 1
        while self.tail(h) >= eps:
            h *= 2
            if h > 2 ** 60:
                raise RuntimeError("tail does not decay")
        lo, hi = h // 2, h
        while lo + 1 < hi:
            mid = (lo + hi) // 2
            if self.tail(mid) < eps:
                hi = mid
            else:
                lo = mid
        return hi

    def condition_ii(self):
        """Sign condition ruling out coherent configurations.

        True iff some even lag has a negative coefficient, or there are
        odd lags with coefficients of both signs.
        """
        raise NotImplementedError

    def condition_iii(self):
        """Square-summability of the tails, decided analytically."""
        raise NotImplementedError


@dataclass(frozen=True)
class FiniteVector(CoefficientModel):
    """Explicit signed coefficients theta_1..theta_m."""

    values: tuple

    finite_support = True

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))

    @property
    def max_lag(self):
        return len(self.values)

    def abs_theta(self, k):
        if 1 <= k <= len(self.values):
            return abs(self.values[k - 1])
        return 0.0

    def sign_theta(self, k):
        if 1 <= k <= len(self.values):
            v = self.values[k - 1]
            if v > 0:
                return 1
            if v < 0:
                return -1
        return 0

    def tail(self, k):
        if k > len(self.values):
            return 0.0
        return float(sum(abs(v) for v in self.values[k - 1:]))

    def support(self):
        return [k for k in range(1, len(self.values) + 1) if self.values[k - 1] != 0.0]

    def support_gcd(self):
        return math.gcd(*self.support())

    def condition_ii(self):
        has_even_neg = any(
            k % 2 == 0 and self.values[k - 1] < 0 for k in self.support()
        )
        odd_neg = any(k % 2 == 1 and self.values[k - 1] < 0 for k in self.support())
        odd_pos = any(k % 2 == 1 and self.values[k - 1] > 0 for k in self.support())
        return has_even_neg or (odd_neg and odd_pos)

    def condition_iii(self):
        return True

    def reduced(self, k0):
        """Subsampled vector theta*_k = theta_(k*k0); defined when k0 divides
        every support lag."""
        m = len(self.values) // k0
        return FiniteVector(tuple(self.values[k * k0 - 1] for k in range(1, m + 1)))


@dataclass(frozen=True)
class Geometric(CoefficientModel):
    """|theta_k| = (1-q) q^(k-1) with a periodic sign pattern."""

    q: float
    pattern: SignPattern = field(default_factory=lambda: SignPattern((1,)))

    def __post_init__(self):
        if not (0.0 < self.q < 1.0):
            raise ParameterError("geometric ratio q must lie in (0, 1)")

    def abs_theta(self, k):
        return (1.0 - self.q) * self.q ** (k - 1)

    def sign_theta(self, k):
        return self.pattern.at(k)

    def tail(self, k):
        return self.q ** (k - 1)

    def support_gcd(self):
        return 1

    def condition_ii(self):
        return _pattern_condition_ii(self.pattern)

    def condition_iii(self):
        return True


class PowerLaw(CoefficientModel):
    """|theta_k| = k^(-alpha) / Z(alpha) with a periodic sign pattern."""

    finite_support = False

    def __init__(self, alpha, pattern=None):
        if not alpha > 1.0:
            raise ParameterError("power-law exponent alpha must exceed 1")
        self.alpha = float(alpha)
        self.pattern = pattern if pattern is not None else SignPattern((1,))
        ks = np.arange(1, _ZETA_SUM_HORIZON + 1, dtype=float)
        masses = ks ** (-self.alpha)
        self.normalizer = float(masses.sum()) + _power_tail(
            self.alpha, _ZETA_SUM_HORIZON + 1
        )
        # prefix[j] = sum of k^(-alpha) for k <= j, j = 0.._PREFIX_CACHE
        self._prefix = np.concatenate(([0.0], np.cumsum(masses[:_PREFIX_CACHE])))

    def __repr__(self):
        return "PowerLaw(alpha=%r, pattern=%r)" % (self.alpha, self.pattern)

    def abs_theta(self, k):
        return k ** (-self.alpha) / self.normalizer

    def sign_theta(self, k):
        return self.pattern.at(k)

    def tail(self, k):
        if k == 1:
            return 1.0
        if k - 1 <= _PREFIX_CACHE:
            return (self.normalizer - float(self._prefix[k - 1])) / self.normalizer
        return _power_tail(self.alpha, k) / self.normalizer

    def support_gcd(self):
        return 1

    def condition_ii(self):
        return _pattern_condition_ii(self.pattern)

    def condition_iii(self):
        # T(k) ~ k^(1-alpha)/(alpha-1); sum of T(k)^2 converges iff
        # 2(alpha-1) > 1.
        return self.alpha > 1.5


def _pattern_condition_ii(pattern):
    # Full support: inspect lags 1..2P, which covers every (parity, sign)
    # combination the periodic pattern can produce.
    lags = range(1, 2 * pattern.period + 1)
    has_even_neg = any(k % 2 == 0 and pattern.at(k) < 0 for k in lags)
    odd_neg = any(k % 2 == 1 and pattern.at(k) < 0 for k in lags)
    odd_pos = any(k % 2 == 1 and pattern.at(k) > 0 for k in lags)
    return has_even_neg or (odd_neg and odd_pos)


@dataclass(frozen=True)
class BiasedModel:
    """Sub-unit lag mass r0 plus a constant bias term theta0.

    The lag distribution places |theta*_k| = r0 * |theta_k(base)| on each
    lag k >= 1 and the remaining mass 1 - r0 on lag 0, where a particle
    sticks and receives an independent terminal sign.
    """

    base: CoefficientModel
    theta0: float
    r0: float

    def __post_init__(self):
        if not self.r0 < 1.0:
            raise ParameterError("biased model requires r0 < 1")
        if self.r0 < 0.0 or abs(self.theta0) > 1.0:
            raise ParameterError("theta0 must lie in [-1, 1] and r0 in [0, 1)")
        if self.r0 + abs(self.theta0) > 1.0 + NORMALIZATION_TOL:
            raise ParameterError("r0 + |theta0| must not exceed 1")

    def prob_stick(self):
        return 1.0 - self.r0

    def prob_terminal_plus(self):
        """P(U = +1) for the terminal sign of a stuck particle."""
        return (1.0 - self.r0 + self.theta0) / (2.0 * (1.0 - self.r0))


def validate(model):
    """Check model invariants; raises on failure, returns None on success."""
    if isinstance(model, BiasedModel):
        validate(model.base)
        # dataclass __post_init__ already enforced the bias constraints
        return
    if isinstance(model, FiniteVector):
        if not any(v != 0.0 for v in model.values):
            raise EmptySupportError("finite vector has empty support")
        total = sum(abs(v) for v in model.values)
        if abs(total - 1.0) > NORMALIZATION_TOL:
            raise NormalizationError(
                "absolute masses sum to %.17g, expected 1" % total
            )
        return
    if isinstance(model, (Geometric, PowerLaw)):
        # parameter checks ran at construction; normalization is exact by
        # construction
        return
    raise ParameterError("unknown model type %r" % type(model).__name__)


# ---------------------------------------------------------------------------
# Classification


@dataclass(frozen=True)
class ClassificationVerdict:
    """Outcome of the uniqueness decision procedure.

    kind is one of "nonunique_gcd", "nonunique_constant",
    "nonunique_checkerboard", "unique", "undetermined".  For gcd verdicts,
    k0 > 1 holds and `reduced` carries the verdict of the subsampled
    model (informational: nonuniqueness is already certain).
    """

    kind: str
    k0: int = 1
    reduced: "ClassificationVerdict | None" = None
    evidence: str = ""

    @property
    def is_unique(self):
        return self.kind == "unique"

    @property
    def is_nonunique(self):
        return self.kind.startswith("nonunique")

    def describe(self):
        label = {
            "nonunique_gcd": "NonUnique: gcd = %d" % self.k0,
            "nonunique_constant": "NonUnique: coherent constant configurations",
            "nonunique_checkerboard": "NonUnique: coherent checkerboard configurations",
            "unique": "Unique",
            "undetermined": "Undetermined",
        }[self.kind]
        if self.evidence:
            label += " (%s)" % self.evidence
        if self.reduced is not None:
            label += " [reduced model: %s]" % self.reduced.describe()
        return label


def _all_nonnegative(model):
    if isinstance(model, FiniteVector):
        return all(v >= 0.0 for v in model.values)
    return all(s > 0 for s in model.pattern.signs)


def _alternating(model):
    """Nonpositive on odd lags, nonnegative on even lags."""
    if isinstance(model, FiniteVector):
        return all(
            (v <= 0.0 if k % 2 == 1 else v >= 0.0)
            for k, v in enumerate(model.values, start=1)
        )
    return all(
        (model.pattern.at(k) < 0 if k % 2 == 1 else model.pattern.at(k) > 0)
        for k in range(1, 2 * model.pattern.period + 1)
    )


def classify(model):
    """Decide uniqueness of the compatible process for the model's kernel.

    gcd(support) > 1 forces nonuniqueness outright; with gcd 1 the two
    coherent-configuration cases (all signs nonnegative, or alternating)
    are nonunique, and otherwise uniqueness holds whenever the tails are
    square-summable.  When only that last condition fails the verdict is
    deliberately left undetermined.
    """
    validate(model)
    k0 = model.support_gcd()
    if k0 > 1:
        reduced = None
        if isinstance(model, FiniteVector):
            reduced = classify(model.reduced(k0))
        return ClassificationVerdict(
            "nonunique_gcd", k0=k0, reduced=reduced, evidence="i fails: gcd=%d" % k0
        )
    if _all_nonnegative(model):
        return ClassificationVerdict(
            "nonunique_constant", evidence="all coefficients nonnegative"
        )
    if _alternating(model):
        return ClassificationVerdict(
            "nonunique_checkerboard",
            evidence="nonpositive odd lags, nonnegative even lags",
        )
    # conditions i and ii hold at this point
    assert model.condition_ii()
    if model.condition_iii():
        return ClassificationVerdict(
            "unique", evidence="i: gcd=1; ii: sign condition; iii: tails square-summable"
        )
    return ClassificationVerdict(
        "undetermined", evidence="i, ii hold; iii fails (tails not square-summable)"
    )


@dataclass(frozen=True)
class CoherentConfiguration:
    """A periodic configuration s with s_n s_m theta_(n-m) > 0 on every
    support lag, together with the lags checked as certificate."""

    period: tuple  # values s_0, s_1, ... over one period
    checked_lags: tuple

    def value_at(self, n):
        return self.period[n % len(self.period)]


def _certify(period, model, lags):
    conf = CoherentConfiguration(tuple(period), tuple(lags))
    for k in lags:
        for n in range(len(period)):
            if conf.value_at(n) * conf.value_at(n - k) * model.theta(k) <= 0:
                return None
    return conf


def coherent_configurations(model):
    """Period-<=2 configurations coherent with the model, with certificates.

    Only defined for gcd-1 supports (reduce first otherwise); the result
    is the constant pair, the checkerboard pair, or empty.
    """
    validate(model)
    if model.support_gcd() != 1:
        raise GcdError("coherent configurations require gcd(support) = 1")
    if isinstance(model, FiniteVector):
        lags = model.support()
    else:
        lags = list(range(1, 2 * model.pattern.period + 1))
    out = []
    for period in ((1,), (-1,), (1, -1), (-1, 1)):
        conf = _certify(period, model, lags)
        if conf is not None:
            out.append(conf)
    return out

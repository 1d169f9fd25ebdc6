"""Exception types shared across the package."""


class BinchainError(Exception):
    """Base class for all package errors."""


class NormalizationError(BinchainError):
    """Absolute coefficient masses do not sum to 1 within tolerance."""


class EmptySupportError(BinchainError):
    """A finite coefficient vector with no nonzero entry."""


class ParameterError(BinchainError):
    """A parametric family parameter out of its admissible range."""


class GcdError(BinchainError):
    """Operation requires gcd of the support to be 1."""


class MemoryTooLarge(BinchainError):
    """Requested exact Markov oracle exceeds the state-count ceiling."""


class GuardExceeded(BinchainError):
    """A simulation run consumed its draw budget before coalescing."""

    def __init__(self, max_draws, active_remaining):
        super().__init__(
            "draw budget %d exhausted with %d active particles"
            % (max_draws, active_remaining)
        )
        self.max_draws = max_draws
        self.active_remaining = active_remaining


class CycleError(BinchainError):
    """The freeze-parent relation contains a cycle (should never happen)."""


class LagTooLarge(BinchainError):
    """Requested autocovariance lag exceeds the window length."""


class EmptyInput(BinchainError):
    """Estimator called with no sample windows."""


class SupportMismatch(BinchainError):
    """Two distributions compared over different outcome sets."""


class InsufficientLags(BinchainError):
    """Not enough covariance lags supplied for the requested residual."""

"""Exception hierarchy shared by all clext modules."""


class ClextError(Exception):
    """Base class for every error raised by this package."""


class ShapeError(ClextError, ValueError):
    """A vector argument has the wrong length."""


class ZeroSumViolation(ClextError, ValueError):
    """The algebra parameters do not sum to zero."""


class PositivityViolation(ClextError, ValueError):
    """Some partial sum beta_mu violates beta_mu > -mu."""

    def __init__(self, mu, beta_mu):
        self.mu = mu
        self.beta_mu = beta_mu
        super().__init__(
            f"beta_{mu} = {beta_mu} <= -{mu}; Fock space is not well defined"
        )


class TruncationTooSmall(ClextError, ValueError):
    """The requested matrix / state truncation cannot hold the object."""


class SectorError(ClextError, ValueError):
    """No nontrivial coherent state exists in the requested sector."""


class DomainError(ClextError, ValueError):
    """Argument outside the mathematical domain of the function."""


class PoleInDenominator(ClextError, ValueError):
    """A lower hypergeometric parameter is a non-positive integer."""


class DivergentSeries(ClextError, ValueError):
    """The requested series diverges for the given argument."""


class NoConvergence(ClextError, ArithmeticError):
    """Iteration/term cap reached before the tolerance was met."""


class CancellationLoss(ClextError, ArithmeticError):
    """Catastrophic cancellation detected; no accurate digits remain."""


class QuadratureFailure(ClextError, ArithmeticError):
    """Numerical integration failed to reach the requested accuracy."""

    def __init__(self, message, worst_interval=None):
        self.worst_interval = worst_interval
        super().__init__(message)


class PositivityUnavailable(ClextError, ValueError):
    """No positivity certificate exists for the requested weight."""

    def __init__(self, refusal):
        self.refusal = refusal
        super().__init__(f"no positive weight function available: {refusal}")


class UnsupportedOp(ClextError, ValueError):
    """Operator not available in the chosen Bargmann basis."""


class NonPolynomialResult(ClextError, ArithmeticError):
    """A 1/z atom failed to cancel; the sector routing is inconsistent."""

"""Exception hierarchy shared by every bfseq sub-package."""


class BfseqError(Exception):
    """Base class for all bfseq errors."""


class ConfigError(BfseqError, ValueError):
    """Raised when an input violates a documented invariant or schema rule."""


class NumericalError(BfseqError, ArithmeticError):
    """Raised when a numerical routine fails to deliver a usable result."""


class IntegrationError(NumericalError):
    """Raised when adaptive quadrature does not reach the requested tolerance.

    Attributes:
        value: Best estimate of the integral at the point of failure.
        err_est: Error estimate reported with the best estimate.
    """

    def __init__(self, msg: str, value: float, err_est: float) -> None:
        super().__init__(msg)
        self.value = value
        self.err_est = err_est


class RootFindingError(NumericalError):
    """Raised when a bracketing root finder does not converge.

    Attributes:
        lo: Lower end of the last bracket.
        hi: Upper end of the last bracket.
    """

    def __init__(self, msg: str, lo: float, hi: float) -> None:
        super().__init__(msg)
        self.lo = lo
        self.hi = hi


class BracketError(RootFindingError):
    """Raised when the function has no sign change over the bracket."""


class CholeskyError(NumericalError):
    """Raised when a covariance matrix is not positive definite."""


class DesignError(BfseqError, ValueError):
    """Raised when design components cannot be combined."""


class TargetUnreachableError(BfseqError):
    """Raised when a sample-size search cannot meet its target within the bracket.

    Attributes:
        achieved: Probability reached at the upper end of the bracket.
        target: Requested probability.
    """

    def __init__(self, msg: str, achieved: float, target: float) -> None:
        super().__init__(msg)
        self.achieved = achieved
        self.target = target

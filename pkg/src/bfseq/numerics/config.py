from dataclasses import dataclass

from bfseq.errors import ConfigError


@dataclass(frozen=True)
class Tolerance:
    """Accuracy settings for quadrature and root-finding.

    Attributes:
        abs_tol: Absolute tolerance, strictly positive.
        rel_tol: Relative tolerance, non-negative.
        max_iter: Iteration (or subinterval) limit, at least 1.
    """

    abs_tol: float = 1e-8
    rel_tol: float = 1e-10
    max_iter: int = 200

    def __post_init__(self) -> None:
        if not self.abs_tol > 0:
            msg = f"abs_tol must be positive, got {self.abs_tol}"
            raise ConfigError(msg)
        if not self.rel_tol >= 0:
            msg = f"rel_tol must be non-negative, got {self.rel_tol}"
            raise ConfigError(msg)
        if self.max_iter < 1:
            msg = f"max_iter must be at least 1, got {self.max_iter}"
            raise ConfigError(msg)

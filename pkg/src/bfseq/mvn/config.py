from dataclasses import dataclass

from bfseq.errors import ConfigError


@dataclass(frozen=True)
class MvnConfig:
    """Accuracy settings for randomized quasi-Monte Carlo integration.

    Attributes:
        abs_tol: Target for three standard errors of the estimate.
        n_randomizations: Independent scrambles used to estimate the error, at least 2.
        initial_points: Points per randomization in the first pass, a power of two.
        max_points: Cap on points per randomization, a power of two.
    """

    abs_tol: float = 5e-5
    n_randomizations: int = 10
    initial_points: int = 1024
    max_points: int = 65536

    def __post_init__(self) -> None:
        if not self.abs_tol > 0:
            msg = f"mvn abs_tol must be positive, got {self.abs_tol}"
            raise ConfigError(msg)
        if self.n_randomizations < 2:
            msg = f"n_randomizations must be at least 2, got {self.n_randomizations}"
            raise ConfigError(msg)
        sizes = (("initial_points", self.initial_points), ("max_points", self.max_points))
        for name, value in sizes:
            if value < 1 or value & (value - 1):
                msg = f"{name} must be a positive power of two, got {value}"
                raise ConfigError(msg)
        if self.max_points < self.initial_points:
            msg = "max_points must be at least initial_points"
            raise ConfigError(msg)

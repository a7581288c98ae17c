"""Sets of statistics at which a Bayes factor reaches a threshold.

Every critical set can describe where ``BF01 >= k`` as a tuple of closed intervals;
stopping regions are assembled from these.
"""

import math
from dataclasses import dataclass

from bfseq.errors import ConfigError

Interval = tuple[float, float]

_REAL_LINE: tuple[Interval, ...] = ((-math.inf, math.inf),)


@dataclass(frozen=True)
class TwoSidedBoundary:
    """Two critical values around the maximum of a unimodal Bayes factor.

    Attributes:
        M: Location of the maximum of BF01 (centre of the interval for normal priors).
        X: Squared half-width of the interval; infinite when a side is unbounded.
        z_minus: Lower critical value.
        z_plus: Upper critical value.
    """

    M: float  # noqa: N815
    X: float  # noqa: N815
    z_minus: float
    z_plus: float

    def __post_init__(self) -> None:
        if not self.X >= 0:
            msg = f"discriminant must be non-negative, got {self.X}"
            raise ConfigError(msg)
        if not self.z_minus <= self.M <= self.z_plus:
            msg = f"expected z_minus <= M <= z_plus, got {self.z_minus}, {self.M}, {self.z_plus}"
            raise ConfigError(msg)


@dataclass(frozen=True)
class Single:
    """One critical value; BF01 is monotone in the statistic.

    Attributes:
        z_crit: The critical value.
        decreasing: True when BF01 decreases as the statistic grows.
    """

    z_crit: float
    decreasing: bool = True

    def at_least_intervals(self) -> tuple[Interval, ...]:
        if self.decreasing:
            return ((-math.inf, self.z_crit),)
        return ((self.z_crit, math.inf),)

    def values(self) -> tuple[float, ...]:
        return (self.z_crit,)


@dataclass(frozen=True)
class Pair:
    """Two critical values; BF01 is at least k between them."""

    boundary: TwoSidedBoundary

    def at_least_intervals(self) -> tuple[Interval, ...]:
        return ((self.boundary.z_minus, self.boundary.z_plus),)

    def values(self) -> tuple[float, ...]:
        return tuple(v for v in (self.boundary.z_minus, self.boundary.z_plus) if math.isfinite(v))


@dataclass(frozen=True)
class Unattainable:
    """The threshold is never crossed.

    Attributes:
        above: True when BF01 exceeds k everywhere, False when it stays below k.
    """

    above: bool = False

    def at_least_intervals(self) -> tuple[Interval, ...]:
        return _REAL_LINE if self.above else ()

    def values(self) -> tuple[float, ...]:
        return ()


CriticalSet = Single | Pair | Unattainable

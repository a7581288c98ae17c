"""Maps from reported sample sizes to statistical information."""

import math
from collections.abc import Sequence
from dataclasses import dataclass
from enum import StrEnum
from typing import ClassVar

from bfseq.errors import ConfigError

ArmSizes = tuple[float, ...]


def _check_sizes(sizes: Sequence[float], arms: int) -> None:
    if len(sizes) != arms:
        msg = f"expected {arms} sample size(s) per stage, got {len(sizes)}"
        raise ConfigError(msg)
    for n in sizes:
        if not (n > 0 and math.isfinite(n)):
            msg = f"sample sizes must be positive, got {n}"
            raise ConfigError(msg)


def _harmonic_half(n1: float, n2: float) -> float:
    return n1 * n2 / (n1 + n2)


@dataclass(frozen=True)
class UnitVariance:
    """One-sample normal mean with known variance; I(n) = n / lambda^2."""

    kind: ClassVar[str] = "unit-variance"
    arms: ClassVar[int] = 1

    lambda2: float = 1.0

    def __post_init__(self) -> None:
        if not (self.lambda2 > 0 and math.isfinite(self.lambda2)):
            msg = f"lambda2 must be positive, got {self.lambda2}"
            raise ConfigError(msg)

    def information(self, sizes: ArmSizes) -> float:
        _check_sizes(sizes, self.arms)
        return sizes[0] / self.lambda2


@dataclass(frozen=True)
class TwoSampleZ:
    """Difference of two normal means with unit variance; I = n1*n2 / (n1 + n2)."""

    kind: ClassVar[str] = "two-sample-z"
    arms: ClassVar[int] = 2

    def information(self, sizes: ArmSizes) -> float:
        _check_sizes(sizes, self.arms)
        return _harmonic_half(sizes[0], sizes[1])


@dataclass(frozen=True)
class TwoProportionsDelta:
    """Log odds ratio of two proportions with a delta-method standard error.

    Attributes:
        pi0: Assumed success probability in the control group.
        pi1: Assumed success probability in the treatment group.
    """

    kind: ClassVar[str] = "two-proportions-delta"
    arms: ClassVar[int] = 2

    pi0: float
    pi1: float

    def __post_init__(self) -> None:
        for name, p in (("pi0", self.pi0), ("pi1", self.pi1)):
            if not 0.0 < p < 1.0:
                msg = f"{name} must lie strictly between 0 and 1, got {p}"
                raise ConfigError(msg)

    def information(self, sizes: ArmSizes) -> float:
        _check_sizes(sizes, self.arms)
        variance = 1.0 / (sizes[0] * self.pi0 * (1.0 - self.pi0)) + 1.0 / (
            sizes[1] * self.pi1 * (1.0 - self.pi1)
        )
        return 1.0 / variance


class TTestDesign(StrEnum):
    ONE_SAMPLE = "one-sample"
    PAIRED = "paired"
    TWO_SAMPLE = "two-sample"


@dataclass(frozen=True)
class TTestApprox:
    """t-test whose statistic is approximated by N(theta * sqrt(n_eff), 1); I = n_eff."""

    kind: ClassVar[str] = "t-test"

    design: TTestDesign = TTestDesign.TWO_SAMPLE

    @property
    def arms(self) -> int:
        return 2 if self.design is TTestDesign.TWO_SAMPLE else 1

    def effective_n(self, sizes: ArmSizes) -> float:
        _check_sizes(sizes, self.arms)
        if self.design is TTestDesign.TWO_SAMPLE:
            return _harmonic_half(sizes[0], sizes[1])
        return sizes[0]

    def degrees_of_freedom(self, sizes: ArmSizes) -> float:
        _check_sizes(sizes, self.arms)
        df = sum(sizes) - self.arms
        if df <= 0:
            msg = f"sample sizes {sizes} leave no degrees of freedom"
            raise ConfigError(msg)
        return df

    def information(self, sizes: ArmSizes) -> float:
        return self.effective_n(sizes)


InformationModel = UnitVariance | TwoSampleZ | TwoProportionsDelta | TTestApprox

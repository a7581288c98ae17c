import math
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Self

import numpy as np

from bfseq.errors import ConfigError
from bfseq.mvn import FloatArray, MvnMoments

from .information import ArmSizes, InformationModel

StageSize = float | Sequence[float]


@dataclass(frozen=True)
class StageInfo:
    """Reported per-arm sample sizes at one analysis and the information they carry."""

    n_report: ArmSizes
    info: float


@dataclass(frozen=True)
class Schedule:
    """Ordered analyses of a sequential design.

    Attributes:
        stages: One entry per analysis, information strictly increasing.
    """

    stages: tuple[StageInfo, ...]

    def __post_init__(self) -> None:
        if not self.stages:
            msg = "a schedule needs at least one analysis"
            raise ConfigError(msg)
        for prev, cur in zip(self.stages[:-1], self.stages[1:], strict=True):
            if not cur.info > prev.info:
                msg = f"information must increase strictly, got {prev.info} then {cur.info}"
                raise ConfigError(msg)
            if any(c < p for p, c in zip(prev.n_report, cur.n_report, strict=True)):
                msg = f"sample sizes must not decrease, got {prev.n_report} then {cur.n_report}"
                raise ConfigError(msg)

    @property
    def m(self) -> int:
        return len(self.stages)

    @property
    def info(self) -> FloatArray:
        return np.array([s.info for s in self.stages], dtype=np.float64)

    @property
    def n_report(self) -> FloatArray:
        """Reported sizes as an ``(m, arms)`` array."""
        return np.array([s.n_report for s in self.stages], dtype=np.float64)

    @property
    def arms(self) -> int:
        return len(self.stages[0].n_report)


def _stage_sizes(n: StageSize, arms: int) -> ArmSizes:
    if isinstance(n, int | float):
        return (float(n),) * arms
    sizes = tuple(float(v) for v in n)
    if len(sizes) != arms:
        msg = f"expected {arms} sample size(s) per stage, got {list(sizes)}"
        raise ConfigError(msg)
    return sizes


def build_schedule(info_model: InformationModel, n_per_stage: Sequence[StageSize]) -> Schedule:
    """Compute the information of each analysis from its sample sizes.

    Args:
        info_model: Model mapping sample sizes to information.
        n_per_stage: Per-arm size at each analysis. A scalar means equal arms.
            Real values are accepted.

    Returns:
        The schedule.

    Raises:
        ConfigError: If sizes are not positive or not strictly increasing.
    """
    if not n_per_stage:
        msg = "a schedule needs at least one analysis"
        raise ConfigError(msg)
    sizes = [_stage_sizes(n, info_model.arms) for n in n_per_stage]
    for prev, cur in zip(sizes[:-1], sizes[1:], strict=True):
        if not sum(cur) > sum(prev):
            msg = f"sample sizes must increase strictly between analyses, got {prev} then {cur}"
            raise ConfigError(msg)
    return Schedule(tuple(StageInfo(s, info_model.information(s)) for s in sizes))


def equal_spacing(n_max: float, m: int, rounding: bool = True) -> list[float]:
    """Per-arm sizes of ``m`` equally spaced analyses ending at ``n_max``.

    With ``rounding`` each size is rounded to the nearest integer.
    """
    if m < 1:
        msg = f"number of analyses must be at least 1, got {m}"
        raise ConfigError(msg)
    sizes = [n_max * j / m for j in range(1, m + 1)]
    return [float(round(n)) for n in sizes] if rounding else sizes


def scaled_schedule(
    info_model: InformationModel, n_max: float, m: int, rounding: bool = True
) -> Schedule:
    """Equally spaced schedule with equal arms ending at ``n_max`` per arm."""
    return build_schedule(info_model, equal_spacing(n_max, m, rounding))


@dataclass(frozen=True)
class Thresholds:
    """Stop for H0 once BF01 >= k0, for H1 once BF01 <= k1."""

    k0: float
    k1: float

    def __post_init__(self) -> None:
        if not (self.k0 > 1 and math.isfinite(self.k0)):
            msg = f"k0 must exceed 1, got {self.k0}"
            raise ConfigError(msg)
        if not 0 < self.k1 < 1:
            msg = f"k1 must lie strictly between 0 and 1, got {self.k1}"
            raise ConfigError(msg)


@dataclass(frozen=True)
class DesignPrior:
    """Distribution of the true effect used to evaluate a design.

    Attributes:
        mu_d: Mean of the design prior.
        tau_d: Standard deviation; zero for a point prior at ``mu_d``.
    """

    mu_d: float
    tau_d: float = 0.0

    def __post_init__(self) -> None:
        if not math.isfinite(self.mu_d):
            msg = f"design prior mean must be finite, got {self.mu_d}"
            raise ConfigError(msg)
        if not (self.tau_d >= 0 and math.isfinite(self.tau_d)):
            msg = f"design prior sd must be non-negative, got {self.tau_d}"
            raise ConfigError(msg)

    @classmethod
    def point(cls, theta: float) -> Self:
        return cls(mu_d=theta, tau_d=0.0)

    @property
    def is_point(self) -> bool:
        return self.tau_d == 0.0


def z_moments(schedule: Schedule, design_prior: DesignPrior) -> MvnMoments:
    """Prior-predictive distribution of the vector of z-statistics.

    The mean is ``mu_d * sqrt(I)``. The covariance adds ``tau_d^2 sqrt(I) sqrt(I)^T``
    to the canonical correlation ``sqrt(I_i / I_j)`` for ``i <= j``.
    """
    info = schedule.info
    root = np.sqrt(info)
    canonical = np.sqrt(np.minimum.outer(info, info) / np.maximum.outer(info, info))
    cov = canonical + design_prior.tau_d**2 * np.outer(root, root)
    return MvnMoments(design_prior.mu_d * root, cov)

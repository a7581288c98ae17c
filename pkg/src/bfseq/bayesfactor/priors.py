import math
from dataclasses import dataclass, field
from typing import ClassVar, Self

from bfseq.errors import ConfigError
from bfseq.numerics import t_cdf

# Truncated analysis priors with less mass than this inside [a, b] are rejected.
MIN_PRIOR_MASS = 1e-12

JZS_SCALE = 1.0 / math.sqrt(2.0)


def _require_positive(name: str, value: float) -> None:
    if not (value > 0 and math.isfinite(value)):
        msg = f"{name} must be a positive finite number, got {value}"
        raise ConfigError(msg)


def _require_finite(name: str, value: float) -> None:
    if not math.isfinite(value):
        msg = f"{name} must be finite, got {value}"
        raise ConfigError(msg)


@dataclass(frozen=True)
class ZObservation:
    """A z-statistic together with the standard error of its effect estimate."""

    z: float
    sigma: float

    def __post_init__(self) -> None:
        _require_finite("z", self.z)
        _require_positive("sigma", self.sigma)


@dataclass(frozen=True)
class DirectionalDirectional:
    """H0: theta <= 0 against H1: theta > 0 under one normal prior N(mu, tau^2)."""

    family: ClassVar[str] = "directional-directional"
    two_sided: ClassVar[bool] = False

    mu: float
    tau: float

    def __post_init__(self) -> None:
        _require_finite("mu", self.mu)
        _require_positive("tau", self.tau)


@dataclass(frozen=True)
class PointPoint:
    """H0: theta = 0 against H1: theta = mu; the Bayes factor is a likelihood ratio."""

    family: ClassVar[str] = "point-point"
    two_sided: ClassVar[bool] = False

    mu: float

    def __post_init__(self) -> None:
        _require_finite("mu", self.mu)
        if self.mu == 0:
            msg = "point-point alternative mu must be nonzero"
            raise ConfigError(msg)


@dataclass(frozen=True)
class PointTwoSided:
    """H0: theta = 0 against H1: theta ~ N(mu, tau^2)."""

    family: ClassVar[str] = "point-two-sided"
    two_sided: ClassVar[bool] = True

    mu: float
    tau: float

    def __post_init__(self) -> None:
        _require_finite("mu", self.mu)
        _require_positive("tau", self.tau)


@dataclass(frozen=True)
class PointDirectional:
    """H0: theta = 0 against H1: theta ~ N(mu, tau^2) truncated to positive values."""

    family: ClassVar[str] = "point-directional"
    two_sided: ClassVar[bool] = False

    mu: float
    tau: float

    def __post_init__(self) -> None:
        _require_finite("mu", self.mu)
        _require_positive("tau", self.tau)


@dataclass(frozen=True)
class InformedT:
    """Location-scale t prior on the standardized effect, truncated to [a, b].

    ``kappa = 1``, ``mu = 0`` and ``tau = 1/sqrt(2)`` without truncation is the
    default Jeffreys-Zellner-Siow (Cauchy) prior.

    Attributes:
        mu: Prior location.
        tau: Prior scale.
        kappa: Prior degrees of freedom.
        a: Lower truncation point, may be ``-inf``.
        b: Upper truncation point, may be ``+inf``.
        prior_mass: Mass of the untruncated prior inside [a, b].
    """

    family: ClassVar[str] = "informed-t"

    mu: float = 0.0
    tau: float = JZS_SCALE
    kappa: float = 1.0
    a: float = -math.inf
    b: float = math.inf
    prior_mass: float = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        _require_finite("mu", self.mu)
        _require_positive("tau", self.tau)
        _require_positive("kappa", self.kappa)
        if math.isnan(self.a) or math.isnan(self.b) or not self.a < self.b:
            msg = f"truncation bounds must satisfy a < b, got a={self.a}, b={self.b}"
            raise ConfigError(msg)
        lo = (self.a - self.mu) / self.tau
        hi = (self.b - self.mu) / self.tau
        if lo > 0:
            mass = t_cdf(-lo, self.kappa) - t_cdf(-hi, self.kappa)
        else:
            mass = t_cdf(hi, self.kappa) - t_cdf(lo, self.kappa)
        if mass < MIN_PRIOR_MASS:
            msg = f"truncated prior has mass {mass:.3g} inside [{self.a}, {self.b}]"
            raise ConfigError(msg)
        object.__setattr__(self, "prior_mass", mass)

    @property
    def two_sided(self) -> bool:
        """Whether both signs of the effect are a priori possible."""
        return self.a < 0 < self.b

    @classmethod
    def jzs(cls, scale: float = JZS_SCALE, one_sided: bool = False) -> Self:
        """Cauchy prior centred at zero, optionally restricted to positive effects."""
        return cls(mu=0.0, tau=scale, kappa=1.0, a=0.0 if one_sided else -math.inf)


ZPriorSpec = DirectionalDirectional | PointPoint | PointTwoSided | PointDirectional
AnalysisPriorSpec = ZPriorSpec | InformedT


@dataclass(frozen=True)
class PosteriorMoments:
    """Normal posterior of the effect given a z observation and a normal prior."""

    mu_star: float
    tau_star: float


def posterior_moments(obs: ZObservation, mu: float, tau: float) -> PosteriorMoments:
    """Combine the normal likelihood of ``obs`` with a N(mu, tau^2) prior."""
    _require_positive("tau", tau)
    var = 1.0 / (1.0 / obs.sigma**2 + 1.0 / tau**2)
    return PosteriorMoments(
        mu_star=(obs.z / obs.sigma + mu / tau**2) * var,
        tau_star=math.sqrt(var),
    )

"""Bayes factors expressed through a z-statistic and its standard error."""

import math
from typing import assert_never

from scipy.special import log_expit

from bfseq.errors import BracketError, ConfigError
from bfseq.logging import get_logger
from bfseq.metrics import current_metrics
from bfseq.numerics import (
    CRITICAL_BRACKETS,
    Tolerance,
    expand_bracket,
    find_root,
    norm_logcdf,
    norm_quantile_log,
)

from .critical import CriticalSet, Pair, Single, TwoSidedBoundary, Unattainable
from .priors import (
    DirectionalDirectional,
    PointDirectional,
    PointPoint,
    PointTwoSided,
    ZObservation,
    ZPriorSpec,
    posterior_moments,
)

logger = get_logger(__name__)

# Log Bayes factors are clipped to this magnitude inside root-finding.
LOG_BF_CLIP = 700.0

ROOT_TOLERANCE = Tolerance(abs_tol=1e-12, rel_tol=1e-14, max_iter=200)


def _log_odds_below_zero(mean: float, sd: float) -> float:
    """log Pr(theta <= 0) - log Pr(theta > 0) for theta ~ N(mean, sd^2)."""
    return norm_logcdf(-mean / sd) - norm_logcdf(mean / sd)


def _log_bf_point_two_sided(obs: ZObservation, mu: float, tau: float) -> float:
    r = tau**2 / obs.sigma**2
    shifted = obs.z - mu / obs.sigma
    return 0.5 * math.log1p(r) - 0.5 * (obs.z**2 - shifted**2 / (1.0 + r))


def log_bf01_z(obs: ZObservation, spec: ZPriorSpec) -> float:
    """Natural logarithm of BF01 for a z observation."""
    match spec:
        case DirectionalDirectional(mu=mu, tau=tau):
            post = posterior_moments(obs, mu, tau)
            return _log_odds_below_zero(post.mu_star, post.tau_star) - _log_odds_below_zero(
                mu, tau
            )
        case PointPoint(mu=mu):
            return mu**2 / (2.0 * obs.sigma**2) - obs.z * mu / obs.sigma
        case PointTwoSided(mu=mu, tau=tau):
            return _log_bf_point_two_sided(obs, mu, tau)
        case PointDirectional(mu=mu, tau=tau):
            post = posterior_moments(obs, mu, tau)
            return (
                _log_bf_point_two_sided(obs, mu, tau)
                + norm_logcdf(mu / tau)
                - norm_logcdf(post.mu_star / post.tau_star)
            )
        case _:
            assert_never(spec)


def bf01_z(obs: ZObservation, spec: ZPriorSpec) -> float:
    """Bayes factor in favour of H0 for a z observation.

    Args:
        obs: Observed z-statistic and standard error.
        spec: Analysis prior; one of the four normal-likelihood families.

    Returns:
        BF01, strictly positive (``inf`` when it overflows).
    """
    log_bf = log_bf01_z(obs, spec)
    return math.exp(log_bf) if log_bf < 709.0 else math.inf


def _check_threshold(k: float, sigma: float) -> None:
    if not (k > 0 and math.isfinite(k)):
        msg = f"threshold k must be a positive finite number, got {k}"
        raise ConfigError(msg)
    if not (sigma > 0 and math.isfinite(sigma)):
        msg = f"sigma must be a positive finite number, got {sigma}"
        raise ConfigError(msg)


def _directional_critical(k: float, sigma: float, mu: float, tau: float) -> float:
    # Posterior Pr(theta <= 0) at the critical value is kR / (kR + 1).
    log_kr = math.log(k) + _log_odds_below_zero(mu, tau)
    # Log scale: the tail probability underflows for strong priors.
    if log_kr < 0:
        quantile = -norm_quantile_log(float(log_expit(log_kr)))
    else:
        quantile = norm_quantile_log(float(log_expit(-log_kr)))
    return (quantile * math.sqrt(1.0 / sigma**2 + 1.0 / tau**2) - mu / tau**2) * sigma


def _root_found_critical(k: float, sigma: float, spec: ZPriorSpec) -> CriticalSet:
    log_k = math.log(k)

    def gap(z: float) -> float:
        value = log_bf01_z(ZObservation(z, sigma), spec) - log_k
        return min(max(value, -LOG_BF_CLIP), LOG_BF_CLIP)

    lo, hi = CRITICAL_BRACKETS[-1]
    decreasing = gap(lo) >= gap(hi)
    try:
        lo, hi = expand_bracket(gap)
    except BracketError:
        above = gap(lo) > 0
        logger.debug("critical_value_unattainable", family=spec.family, k=k, sigma=sigma)
        return Unattainable(above=above)
    return Single(find_root(gap, lo, hi, ROOT_TOLERANCE), decreasing=decreasing)


def critical_z(k: float, sigma: float, spec: ZPriorSpec) -> CriticalSet:
    """Values of z at which BF01 equals ``k``.

    Args:
        k: Threshold, positive.
        sigma: Standard error of the effect estimate, positive.
        spec: Analysis prior.

    Returns:
        Closed-form critical values for point-point, point-two-sided and
        directional-directional priors; a root-found single value for the
        point-directional prior. ``Unattainable`` when BF01 never equals ``k``.

    Raises:
        ConfigError: If ``k`` or ``sigma`` is invalid.
    """
    _check_threshold(k, sigma)
    if (metrics := current_metrics()) is not None:
        metrics.critical_values.labels(family=spec.family).inc()

    match spec:
        case PointPoint(mu=mu):
            ratio = mu / sigma
            return Single((ratio**2 - 2.0 * math.log(k)) / (2.0 * ratio), decreasing=mu > 0)
        case PointTwoSided(mu=mu, tau=tau):
            center = -mu * sigma / tau**2
            disc = (mu**2 / tau**2 + math.log1p(tau**2 / sigma**2) - 2.0 * math.log(k)) * (
                1.0 + sigma**2 / tau**2
            )
            if disc < 0:
                return Unattainable(above=False)
            half = math.sqrt(disc)
            return Pair(TwoSidedBoundary(center, disc, center - half, center + half))
        case DirectionalDirectional(mu=mu, tau=tau):
            return Single(_directional_critical(k, sigma, mu, tau), decreasing=True)
        case PointDirectional():
            return _root_found_critical(k, sigma, spec)
        case _:
            assert_never(spec)

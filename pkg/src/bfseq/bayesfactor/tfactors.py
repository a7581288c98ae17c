"""Informed t-test Bayes factor and its critical t-values."""

import functools
import math

from scipy import optimize

from bfseq.errors import BracketError, ConfigError, IntegrationError, NumericalError
from bfseq.logging import get_logger
from bfseq.metrics import current_metrics
from bfseq.numerics import (
    CRITICAL_BRACKETS,
    Tolerance,
    expand_bracket,
    find_root,
    integrate_1d,
    nct_pdf,
    t_logpdf,
)

from .critical import CriticalSet, Pair, Single, TwoSidedBoundary, Unattainable
from .priors import InformedT
from .zfactors import LOG_BF_CLIP

logger = get_logger(__name__)

QUAD_TOLERANCE = Tolerance(abs_tol=1e-12, rel_tol=1e-9, max_iter=200)
ROOT_TOLERANCE = Tolerance(abs_tol=1e-10, rel_tol=1e-12, max_iter=200)

# Half-width of the prior core in prior scale units.
PRIOR_CORE = 40.0
# Half-width of the likelihood window in units of 1/sqrt(n_eff), before adding |t|.
LIKELIHOOD_CORE = 12.0
# Largest log scale factor applied to the integrand before it is shifted down.
MAX_LOG_SCALE = 600.0


def _check_sample(n_eff: float, df: float) -> None:
    if not (n_eff > 0 and math.isfinite(n_eff)):
        msg = f"effective sample size must be positive, got {n_eff}"
        raise ConfigError(msg)
    if not (df > 0 and math.isfinite(df)):
        msg = f"degrees of freedom must be positive, got {df}"
        raise ConfigError(msg)


def _break_points(t: float, n_eff: float, spec: InformedT) -> list[float]:
    root_n = math.sqrt(n_eff)
    peak = t / root_n
    window = (LIKELIHOOD_CORE + abs(t)) / root_n
    candidates = {
        spec.mu - PRIOR_CORE * spec.tau,
        spec.mu,
        spec.mu + PRIOR_CORE * spec.tau,
        peak - window,
        peak,
        peak + window,
    }
    return [spec.a, *sorted(p for p in candidates if spec.a < p < spec.b), spec.b]


def log_bf01_t(t: float, n_eff: float, df: float, spec: InformedT) -> float:
    """Natural logarithm of the informed t-test BF01.

    The marginal likelihood under H1 is divided by the central t density before
    integration, so the quadrature works on the scale of BF10. Where that factor
    would overflow, the integrand is shifted down by a constant on the log scale.

    Raises:
        ConfigError: If the inputs are invalid.
        IntegrationError: If the quadrature does not converge.
        NumericalError: If the integrand overflows.
    """
    _check_sample(n_eff, df)
    if not math.isfinite(t):
        msg = f"t-statistic must be finite, got {t}"
        raise ConfigError(msg)
    root_n = math.sqrt(n_eff)
    log_null = t_logpdf(t, df)
    log_norm = math.log(spec.tau) + math.log(spec.prior_mass)
    shift = max(0.0, -log_null - MAX_LOG_SCALE)

    def integrand(theta: float) -> float:
        log_prior = t_logpdf((theta - spec.mu) / spec.tau, spec.kappa) - log_norm
        return nct_pdf(t, df, theta * root_n) * math.exp(log_prior - log_null - shift)

    points = _break_points(t, n_eff, spec)
    total = 0.0
    for lo, hi in zip(points[:-1], points[1:], strict=True):
        try:
            value, _ = integrate_1d(integrand, lo, hi, QUAD_TOLERANCE)
        except IntegrationError as exc:
            msg = f"H1 marginal likelihood at t={t}, n_eff={n_eff}, df={df}: {exc}"
            raise IntegrationError(msg, exc.value, exc.err_est) from exc
        except OverflowError as exc:
            msg = f"H1 marginal likelihood overflowed at t={t}, n_eff={n_eff}, df={df}"
            raise NumericalError(msg) from exc
        total += value
    if total <= 0.0:
        return math.inf
    return -math.log(total) - shift


def bf01_t(t: float, n_eff: float, df: float, spec: InformedT) -> float:
    """Bayes factor in favour of H0 for an observed t-statistic.

    Args:
        t: Observed t-statistic.
        n_eff: Effective sample size (n, or n1*n2/(n1+n2) for two groups).
        df: Degrees of freedom of the t-statistic.
        spec: Truncated location-scale t prior on the standardized effect.

    Returns:
        BF01; ``0.0`` and ``inf`` where it underflows or overflows.

    Raises:
        ConfigError: If ``n_eff`` or ``df`` is invalid.
        IntegrationError: If the marginal likelihood quadrature fails.
        NumericalError: If the marginal likelihood overflows.
    """
    log_bf = log_bf01_t(t, n_eff, df, spec)
    return math.exp(log_bf) if log_bf < 709.0 else math.inf


class _Gap:
    """log BF01(t) - log k, clipped, as a callable for the root finders."""

    def __init__(self, k: float, n_eff: float, df: float, spec: InformedT) -> None:
        self._log_k = math.log(k)
        self._n_eff = n_eff
        self._df = df
        self._spec = spec

    def __call__(self, t: float) -> float:
        value = log_bf01_t(t, self._n_eff, self._df, self._spec) - self._log_k
        return min(max(value, -LOG_BF_CLIP), LOG_BF_CLIP)


def _one_sided(gap_fn: _Gap, decreasing: bool) -> CriticalSet:
    try:
        lo, hi = expand_bracket(gap_fn)
    except BracketError:
        lo, _ = CRITICAL_BRACKETS[-1]
        return Unattainable(above=gap_fn(lo) > 0)
    return Single(find_root(gap_fn, lo, hi, ROOT_TOLERANCE), decreasing=decreasing)


def _side_root(gap_fn: _Gap, peak: float, direction: float) -> float:
    for _, reach in CRITICAL_BRACKETS:
        far = peak + direction * (reach + abs(peak))
        if gap_fn(far) <= 0:
            return find_root(gap_fn, peak, far, ROOT_TOLERANCE)
    return direction * math.inf


@functools.lru_cache(maxsize=4096)
def critical_t(k: float, n_eff: float, df: float, spec: InformedT) -> CriticalSet:
    """Values of t at which the informed t-test BF01 equals ``k``.

    Priors truncated to non-negative effects give a single decreasing critical
    value, priors truncated to non-positive effects a single increasing one.
    Otherwise BF01 is unimodal in t and the set is an interval around its maximum;
    a side without a root up to the widest bracket is reported as infinite.

    Raises:
        ConfigError: If ``k``, ``n_eff`` or ``df`` is invalid.
    """
    if not (k > 0 and math.isfinite(k)):
        msg = f"threshold k must be a positive finite number, got {k}"
        raise ConfigError(msg)
    _check_sample(n_eff, df)
    if (metrics := current_metrics()) is not None:
        metrics.critical_values.labels(family=spec.family).inc()

    gap = _Gap(k, n_eff, df, spec)
    if spec.a >= 0:
        return _one_sided(gap, decreasing=True)
    if spec.b <= 0:
        return _one_sided(gap, decreasing=False)

    lo, hi = CRITICAL_BRACKETS[0]
    result = optimize.minimize_scalar(
        lambda t: -gap(t), bounds=(lo, hi), method="bounded", options={"xatol": 1e-8}
    )
    peak = float(result.x)
    if gap(peak) < 0:
        logger.debug("critical_t_unattainable", k=k, n_eff=n_eff, df=df, peak=peak)
        return Unattainable(above=False)

    z_minus = _side_root(gap, peak, -1.0)
    z_plus = _side_root(gap, peak, 1.0)
    if math.isinf(z_minus) and math.isinf(z_plus):
        return Unattainable(above=True)
    half = (z_plus - z_minus) / 2.0
    return Pair(TwoSidedBoundary(peak, half * half, z_minus, z_plus))

"""Scalar special functions with domain checking.

Vectorized code in the integrators calls ``scipy.special`` directly; these wrappers
are the checked scalar entry points used by the Bayes factor formulas.
"""

import math

import numpy as np
from scipy import special, stats

from bfseq.errors import ConfigError, NumericalError


def _check_finite_or_inf(x: float, name: str) -> None:
    if math.isnan(x):
        msg = f"{name} must not be NaN"
        raise ConfigError(msg)


def _check_df(df: float) -> None:
    if not df > 0:
        msg = f"degrees of freedom must be positive, got {df}"
        raise ConfigError(msg)


def norm_cdf(x: float) -> float:
    """Standard normal cumulative distribution function."""
    _check_finite_or_inf(x, "x")
    return float(special.ndtr(x))


def norm_logcdf(x: float) -> float:
    """Logarithm of the standard normal cdf, accurate far into the lower tail."""
    _check_finite_or_inf(x, "x")
    return float(special.log_ndtr(x))


def norm_quantile(p: float) -> float:
    """Inverse of :func:`norm_cdf` on the open unit interval.

    Raises:
        ConfigError: If ``p`` is not strictly between 0 and 1.
    """
    if not 0.0 < p < 1.0:
        msg = f"norm_quantile requires 0 < p < 1, got {p}"
        raise ConfigError(msg)
    return float(special.ndtri(p))


def norm_quantile_log(log_p: float) -> float:
    """Inverse of :func:`norm_cdf` for a probability given on the log scale.

    Stays finite for lower-tail probabilities that underflow in double precision.

    Raises:
        ConfigError: If ``log_p`` is NaN or not negative.
    """
    if not log_p < 0.0:
        msg = f"norm_quantile_log requires log_p < 0, got {log_p}"
        raise ConfigError(msg)
    return float(special.ndtri_exp(log_p))


def t_logpdf(x: float, df: float) -> float:
    """Log density of the central t distribution."""
    _check_df(df)
    _check_finite_or_inf(x, "x")
    return float(
        special.gammaln((df + 1) / 2)
        - special.gammaln(df / 2)
        - 0.5 * math.log(df * math.pi)
        - (df + 1) / 2 * math.log1p(x * x / df)
    )


def t_pdf(x: float, df: float) -> float:
    """Density of the central t distribution with ``df`` degrees of freedom."""
    return math.exp(t_logpdf(x, df))


def t_cdf(x: float, df: float) -> float:
    """Cumulative distribution function of the central t distribution."""
    _check_df(df)
    _check_finite_or_inf(x, "x")
    return float(special.stdtr(df, x))


def nct_pdf(x: float, df: float, ncp: float) -> float:
    """Density of the noncentral t distribution.

    Far-tail evaluations underflow to zero silently.

    Raises:
        NumericalError: If the underlying series overflows, which happens for very
            large degrees of freedom.
    """
    _check_df(df)
    _check_finite_or_inf(x, "x")
    _check_finite_or_inf(ncp, "ncp")
    try:
        with np.errstate(all="ignore"), special.errstate(all="ignore"):
            value = float(stats.nct.pdf(x, df, ncp))
    except OverflowError as exc:
        msg = f"noncentral t density overflowed at x={x}, df={df}, ncp={ncp}"
        raise NumericalError(msg) from exc
    return value if math.isfinite(value) else 0.0

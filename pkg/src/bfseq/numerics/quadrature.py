import math
from collections.abc import Callable, Sequence

from scipy import integrate

from bfseq.errors import ConfigError, IntegrationError
from bfseq.logging import get_logger

from .config import Tolerance

logger = get_logger(__name__)

DEFAULT_TOLERANCE = Tolerance()


def integrate_1d(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: Tolerance = DEFAULT_TOLERANCE,
    points: Sequence[float] | None = None,
) -> tuple[float, float]:
    """Integrate ``f`` over ``[a, b]`` with adaptive Gauss-Kronrod quadrature.

    Infinite endpoints are mapped to a finite range by QUADPACK. Interior break
    points are only honoured on finite ranges.

    Args:
        f: Integrand.
        a: Lower limit, may be ``-inf``.
        b: Upper limit, may be ``+inf``.
        tol: Absolute and relative tolerance plus the subinterval limit.
        points: Optional interior break points for finite ranges.

    Returns:
        Tuple of the integral estimate and its absolute error estimate.

    Raises:
        ConfigError: If a limit is NaN.
        IntegrationError: If the requested tolerance is not met.
    """
    if math.isnan(a) or math.isnan(b):
        msg = f"integration limits must not be NaN, got [{a}, {b}]"
        raise ConfigError(msg)
    if a == b:
        return 0.0, 0.0

    inner = None
    if points and math.isfinite(a) and math.isfinite(b):
        lo, hi = min(a, b), max(a, b)
        inner = sorted({p for p in points if lo < p < hi}) or None

    result = integrate.quad(
        f,
        a,
        b,
        epsabs=tol.abs_tol,
        epsrel=tol.rel_tol,
        limit=tol.max_iter,
        points=inner,
        full_output=1,
    )
    value, err_est = float(result[0]), float(result[1])
    if len(result) > 3:
        allowed = max(tol.abs_tol, tol.rel_tol * abs(value))
        if not (math.isfinite(value) and err_est <= allowed):
            msg = f"quadrature over [{a}, {b}] did not converge: {result[3]}"
            raise IntegrationError(msg, value, err_est)
        logger.debug("quadrature_warning_within_tolerance", a=a, b=b, err_est=err_est)
    return value, err_est

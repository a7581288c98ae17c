import math
from collections.abc import Callable, Sequence

from scipy import optimize

from bfseq.errors import BracketError, ConfigError, RootFindingError

from .config import Tolerance

DEFAULT_TOLERANCE = Tolerance()

# Successive brackets tried when searching for a critical value.
CRITICAL_BRACKETS: tuple[tuple[float, float], ...] = ((-10.0, 10.0), (-40.0, 40.0))


def find_root(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> float:
    """Find a root of ``f`` inside a bracket with Brent's method.

    The bracket endpoints may be given in either order.

    Args:
        f: Continuous function with a sign change over the bracket.
        lo: One end of the bracket.
        hi: Other end of the bracket.
        tol: ``abs_tol`` and ``rel_tol`` are passed as ``xtol``/``rtol``.

    Returns:
        The root.

    Raises:
        ConfigError: If a bracket end is not finite.
        BracketError: If ``f`` has the same sign at both ends.
        RootFindingError: If the iteration limit is reached.
    """
    if not (math.isfinite(lo) and math.isfinite(hi)):
        msg = f"bracket ends must be finite, got [{lo}, {hi}]"
        raise ConfigError(msg)
    lo, hi = min(lo, hi), max(lo, hi)
    f_lo, f_hi = f(lo), f(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if math.copysign(1.0, f_lo) == math.copysign(1.0, f_hi):
        msg = f"no sign change over [{lo}, {hi}]: f(lo)={f_lo:.6g}, f(hi)={f_hi:.6g}"
        raise BracketError(msg, lo, hi)

    root, info = optimize.brentq(
        f,
        lo,
        hi,
        xtol=tol.abs_tol,
        rtol=max(tol.rel_tol, 4 * 2.220446049250313e-16),
        maxiter=tol.max_iter,
        full_output=True,
        disp=False,
    )
    if not info.converged:
        msg = f"root finding did not converge after {info.iterations} iterations: {info.flag}"
        raise RootFindingError(msg, lo, hi)
    return float(root)


def expand_bracket(
    f: Callable[[float], float],
    brackets: Sequence[tuple[float, float]] = CRITICAL_BRACKETS,
) -> tuple[float, float]:
    """Return the first bracket in ``brackets`` over which ``f`` changes sign.

    Raises:
        BracketError: If no bracket shows a sign change.
    """
    for lo, hi in brackets:
        f_lo, f_hi = f(lo), f(hi)
        if f_lo == 0.0 or f_hi == 0.0 or (f_lo < 0.0) != (f_hi < 0.0):
            return lo, hi
    lo, hi = brackets[-1]
    msg = f"no sign change found up to [{lo}, {hi}]"
    raise BracketError(msg, lo, hi)

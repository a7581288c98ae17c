"""Stagewise exit probabilities of a sequentially observed normal vector.

Coordinate ``j`` is looked at after coordinates ``1..j-1``. While it falls in the
stage's continuation interval the process goes on, otherwise it leaves through one
of the stage's exit sets. With the Cholesky factor kept in natural order the
continuation constraints are integrated by sequential conditioning, so one pass of
``d - 1`` dimensional scrambled Sobol' points yields every exit probability.
"""

import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtr, ndtri
from scipy.stats import qmc

from bfseq.errors import CholeskyError, DesignError
from bfseq.logging import get_logger

from .config import MvnConfig
from .integrator import _CHUNK, _U_MAX, _U_MIN, DEFAULT_CONFIG, Seed, _children, _record
from .rectangle import FloatArray, MvnMoments

logger = get_logger(__name__)

Bounds = tuple[float, float]


@dataclass(frozen=True)
class SequentialStage:
    """Exit and continuation sets of one coordinate.

    Attributes:
        exits: Exit sets, each a union of disjoint intervals.
        continuation: Interval where the process goes on; ``None`` when it always stops.
    """

    exits: tuple[tuple[Bounds, ...], ...]
    continuation: Bounds | None


@dataclass(frozen=True, eq=False)
class SequentialResult:
    """Exit probabilities of every stage.

    Attributes:
        exit_probs: Probability of leaving at stage ``j`` through exit ``k``, shape (d, K).
        cum_err: Three standard errors of the cumulative exit probabilities, shape (d, K).
        continuation_prob: Probability of continuing through every stage.
        continuation_err: Error estimate of ``continuation_prob``.
        n_points: Total number of points evaluated.
        capped: Whether the point cap was reached before the tolerance.
    """

    exit_probs: FloatArray
    cum_err: FloatArray
    continuation_prob: float
    continuation_err: float
    n_points: int = 0
    capped: bool = False


def _mass(lo: FloatArray, hi: FloatArray) -> FloatArray:
    """Standard normal mass of ``[lo, hi]``, taken from the nearer tail."""
    upper = lo > 0.0
    return np.where(upper, ndtr(-lo) - ndtr(-hi), ndtr(hi) - ndtr(lo))


def _draw(lo: FloatArray, mass: FloatArray, u: FloatArray) -> FloatArray:
    """Inverse-cdf draw from the standard normal truncated to an interval.

    The interval starts at ``lo`` and holds probability ``mass``.
    """
    below = ndtri(np.clip(ndtr(lo) + u * mass, _U_MIN, _U_MAX))
    above = -ndtri(np.clip(ndtr(-lo) - u * mass, _U_MIN, _U_MAX))
    return np.where(lo > 0.0, above, below)


def _pass(
    chol: FloatArray, mean: FloatArray, stages: Sequence[SequentialStage], u: FloatArray
) -> tuple[FloatArray, float]:
    """Summed exit weights, shape (d, K), and summed final weight over the rows of ``u``."""
    n_pts = u.shape[0]
    dim = chol.shape[0]
    sums = np.zeros((dim, len(stages[0].exits)))
    weight = np.ones(n_pts)
    y = np.zeros((n_pts, dim))
    for j, stage in enumerate(stages):
        scale = chol[j, j]
        shift = mean[j] + y[:, :j] @ chol[j, :j]
        for kind, union in enumerate(stage.exits):
            for lo, hi in union:
                sums[j, kind] += float(weight @ _mass((lo - shift) / scale, (hi - shift) / scale))
        if stage.continuation is None:
            return sums, 0.0
        lo_j = (stage.continuation[0] - shift) / scale
        hi_j = (stage.continuation[1] - shift) / scale
        mass = _mass(lo_j, hi_j)
        if j < dim - 1:
            y[:, j] = _draw(lo_j, mass, u[:, j])
        weight *= mass
    return sums, float(weight.sum())


def mvn_sequential(
    stages: Sequence[SequentialStage],
    moments: MvnMoments,
    config: MvnConfig = DEFAULT_CONFIG,
    seed: Seed = 0,
) -> SequentialResult:
    """Exit probabilities of every stage from a single integration pass.

    Points are doubled until three standard errors of every cumulative exit
    probability and of the continuation probability fall below ``config.abs_tol``.

    Args:
        stages: One entry per coordinate, each with the same number of exit sets.
        moments: Mean and covariance of the coordinates.
        config: Accuracy settings.
        seed: Seed for the scrambles; equal seeds give equal results.

    Raises:
        DesignError: If the stages do not match the distribution.
        CholeskyError: If the covariance is numerically singular.
    """
    dim = moments.dim
    if len(stages) != dim:
        msg = f"{len(stages)} stage(s) given for a {dim}-dimensional distribution"
        raise DesignError(msg)
    if len({len(stage.exits) for stage in stages}) != 1:
        msg = "every stage needs the same number of exit sets"
        raise DesignError(msg)
    try:
        chol = np.linalg.cholesky(moments.cov)
    except np.linalg.LinAlgError as exc:
        msg = f"covariance is not positive definite: {exc}"
        raise CholeskyError(msg) from exc
    mean = np.asarray(moments.mean, dtype=np.float64)

    if dim == 1:
        sums, final = _pass(chol, mean, stages, np.zeros((1, 0)))
        _record("exact", 0)
        return SequentialResult(
            exit_probs=np.clip(sums, 0.0, 1.0),
            cum_err=np.full(sums.shape, 1e-15),
            continuation_prob=min(max(final, 0.0), 1.0),
            continuation_err=1e-15,
        )

    engines = [
        qmc.Sobol(d=dim - 1, scramble=True, seed=np.random.default_rng(child))
        for child in _children(seed, config.n_randomizations)
    ]
    exit_sums = np.zeros((len(engines), dim, len(stages[0].exits)))
    final_sums = np.zeros(len(engines))

    def accumulate(log2_points: int) -> None:
        for i, engine in enumerate(engines):
            u = engine.random_base2(log2_points)
            for start in range(0, u.shape[0], _CHUNK):
                sums, final = _pass(chol, mean, stages, u[start : start + _CHUNK])
                exit_sums[i] += sums
                final_sums[i] += final

    accumulate(int(math.log2(config.initial_points)))
    n_per = config.initial_points
    root_k = math.sqrt(len(engines))
    while True:
        exits = exit_sums / n_per
        finals = final_sums / n_per
        cum_err = 3.0 * np.cumsum(exits, axis=1).std(axis=0, ddof=1) / root_k
        final_err = 3.0 * float(finals.std(ddof=1)) / root_k
        worst = max(float(cum_err.max()), final_err)
        if worst <= config.abs_tol or n_per >= config.max_points:
            break
        accumulate(int(math.log2(n_per)))
        n_per *= 2

    capped = worst > config.abs_tol
    n_points = n_per * len(engines)
    if capped:
        logger.warning("mvn_point_cap_reached", dim=dim, err_est=worst, abs_tol=config.abs_tol)
    _record("sequential", n_points)
    return SequentialResult(
        exit_probs=np.clip(exits.mean(axis=0), 0.0, 1.0),
        cum_err=cum_err,
        continuation_prob=min(max(float(finals.mean()), 0.0), 1.0),
        continuation_err=final_err,
        n_points=n_points,
        capped=capped,
    )

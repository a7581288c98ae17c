"""Maximum sample size search and design sweeps."""

import functools
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from bfseq.errors import ConfigError, TargetUnreachableError
from bfseq.logging import get_logger
from bfseq.mvn import MvnConfig
from bfseq.numerics import Tolerance, find_root
from bfseq.tracing import get_tracer

from .characteristics import DEFAULT_MVN_CONFIG, DesignReport, characteristics
from .model import Hypothesis, SequentialDesign
from .schedule import DesignPrior, Schedule, build_schedule, scaled_schedule

logger = get_logger(__name__)
tracer = get_tracer(__name__)

# Brent tolerance on the continuous maximum sample size.
SEARCH_TOLERANCE = Tolerance(abs_tol=1e-3, rel_tol=1e-8, max_iter=100)


def _evidence(report: DesignReport, hypothesis: Hypothesis) -> float:
    final = report.final
    return final.cum_h1 if hypothesis is Hypothesis.H1 else final.cum_h0


def _stepped(design: SequentialDesign, increment: int) -> Schedule:
    return build_schedule(
        design.info_model, [float(j * increment) for j in range(1, design.m + 1)]
    )


def find_max_n(
    template: SequentialDesign,
    target: float,
    hypothesis: Hypothesis,
    bracket: tuple[float, float],
    config: MvnConfig = DEFAULT_MVN_CONFIG,
    seed: int = 0,
) -> Schedule:
    """Smallest equally spaced integer schedule reaching ``target``.

    The number of analyses is taken from ``template``; sizes are per arm. The
    probability of final evidence for ``hypothesis`` is root-found over a
    continuous maximum sample size, the per-analysis increment is rounded up and
    then raised until the rounded schedule meets the target. The maximum never
    exceeds ``n_hi``: when no multiple of the number of analyses up to ``n_hi``
    meets the target, the schedule rounded at ``n_hi`` is returned.

    Args:
        template: Design whose schedule is replaced.
        target: Required probability of evidence for ``hypothesis``.
        hypothesis: Hypothesis the evidence should favour.
        bracket: Range ``(n_lo, n_hi)`` of the maximum per-arm sample size.
        config: Accuracy of the rectangle integrals.
        seed: Integration seed.

    Returns:
        The schedule. If ``n_lo`` already meets the target its schedule is returned.

    Raises:
        ConfigError: If the target or bracket is invalid.
        TargetUnreachableError: If the schedule rounded at ``n_hi`` misses the target.
    """
    if not 0.0 < target < 1.0:
        msg = f"target probability must lie strictly between 0 and 1, got {target}"
        raise ConfigError(msg)
    n_lo, n_hi = bracket
    if not 0 < n_lo < n_hi:
        msg = f"search bracket must satisfy 0 < n_lo < n_hi, got {bracket}"
        raise ConfigError(msg)
    m = template.m

    def achieved(schedule: Schedule) -> float:
        report = characteristics(template.with_schedule(schedule), config, seed)
        return _evidence(report, hypothesis)

    @functools.cache
    def gap(n_max: float) -> float:
        return achieved(scaled_schedule(template.info_model, n_max, m, rounding=False)) - target

    with tracer.start_as_current_span("find_max_n") as span:
        span.set_attribute("bfseq.target", target)
        span.set_attribute("bfseq.hypothesis", hypothesis.value)

        low = scaled_schedule(template.info_model, n_lo, m)
        if achieved(low) >= target:
            logger.info("search_lower_bound_sufficient", n_lo=n_lo)
            return low

        high = scaled_schedule(template.info_model, n_hi, m)
        at_hi = achieved(high)
        if at_hi < target:
            msg = (
                f"target {target} for {hypothesis.value} is unreachable up to n={n_hi} "
                f"per arm (reached {at_hi:.4f})"
            )
            raise TargetUnreachableError(msg, achieved=at_hi, target=target)

        if gap(n_lo) >= 0.0:
            root = n_lo
        elif gap(n_hi) <= 0.0:
            root = n_hi
        else:
            root = find_root(gap, n_lo, n_hi, SEARCH_TOLERANCE)

        # Equal integer increments per analysis, never past n_hi.
        increment = max(1, math.ceil(root / m - 1e-9))
        while increment * m <= n_hi:
            schedule = _stepped(template, increment)
            prob = achieved(schedule)
            logger.debug("search_step", increment=increment, n_max=increment * m, prob=prob)
            if prob >= target:
                span.set_attribute("bfseq.n_max", increment * m)
                return schedule
            increment += 1

        logger.info("search_clamped_to_upper_bound", n_hi=n_hi, prob=at_hi)
        span.set_attribute("bfseq.n_max", n_hi)
        return high


@dataclass(frozen=True)
class LabelledPrior:
    """Design prior of a sweep together with the hypothesis it represents."""

    label: str
    prior: DesignPrior
    truth: Hypothesis


@dataclass(frozen=True)
class SweepPoint:
    n_max: float
    m: int
    label: str
    truth: Hypothesis
    report: DesignReport


def sweep(
    template: SequentialDesign,
    n_max_grid: Iterable[float],
    looks_grid: Iterable[int],
    design_priors: Sequence[LabelledPrior],
    config: MvnConfig = DEFAULT_MVN_CONFIG,
    seed: int = 0,
) -> list[SweepPoint]:
    """Evaluate equally spaced designs over maximum sample sizes and numbers of looks.

    Combinations whose rounded schedule would repeat a sample size are skipped.

    Raises:
        ConfigError: If the grid is empty.
    """
    grid = [(float(n), int(m)) for n in n_max_grid for m in looks_grid]
    if not grid or not design_priors:
        msg = "sweep grid is empty"
        raise ConfigError(msg)

    points: list[SweepPoint] = []
    with tracer.start_as_current_span("sweep") as span:
        span.set_attribute("bfseq.grid_size", len(grid) * len(design_priors))
        for n_max, m in grid:
            try:
                schedule = scaled_schedule(template.info_model, n_max, m)
            except ConfigError as exc:
                logger.warning("sweep_point_skipped", n_max=n_max, m=m, reason=str(exc))
                continue
            design = template.with_schedule(schedule)
            for labelled in design_priors:
                report = characteristics(design.with_design_prior(labelled.prior), config, seed)
                points.append(SweepPoint(n_max, m, labelled.label, labelled.truth, report))
    return points

"""Operating characteristics of a sequential design without simulation."""

import itertools
import math
from dataclasses import dataclass

import numpy as np

from bfseq.logging import get_logger
from bfseq.mvn import (
    FloatArray,
    MvnConfig,
    MvnMoments,
    MvnResult,
    SequentialStage,
    mvn_prob_union,
    mvn_sequential,
)
from bfseq.tracing import get_tracer

from .information import ArmSizes, TTestApprox
from .model import Hypothesis, SequentialDesign
from .regions import StoppingRegions, stopping_regions
from .schedule import z_moments

logger = get_logger(__name__)
tracer = get_tracer(__name__)

DEFAULT_MVN_CONFIG = MvnConfig()

# Below this effective sample size the normal approximation of t is flagged.
MIN_NORMAL_APPROX_N = 30.0

_STOP_H1, _STOP_H0, _CONTINUE, _SEQUENTIAL = 0, 1, 2, 3


@dataclass(frozen=True)
class StageProbabilities:
    """Stopping probabilities at one analysis.

    ``cum_*`` are cumulative up to and including this analysis; ``h1``/``h0`` are
    the probabilities of stopping exactly here. ``err_*`` are the error estimates
    of the cumulative values.
    """

    stage: int
    n_report: ArmSizes
    cum_h1: float
    cum_h0: float
    cum_inconclusive: float
    h1: float
    h0: float
    err_h1: float
    err_h0: float


@dataclass(frozen=True)
class DesignReport:
    """Stopping probabilities and sample size distribution of a design.

    Attributes:
        stages: Per-analysis probabilities.
        expected_n: Expected sample size at termination, per arm.
        sd_n: Standard deviation of the sample size at termination, per arm.
        cov_n: Coefficient of variation, per arm.
        expected_total_n: Expected total sample size over all arms.
        continuation_prob: Directly integrated probability of ending inconclusive.
        continuation_err: Error estimate of ``continuation_prob``.
        warnings: Human readable caveats about the computation.
    """

    stages: tuple[StageProbabilities, ...]
    expected_n: ArmSizes
    sd_n: ArmSizes
    cov_n: ArmSizes
    expected_total_n: float
    continuation_prob: float
    continuation_err: float
    warnings: tuple[str, ...] = ()

    @property
    def final(self) -> StageProbabilities:
        return self.stages[-1]


@dataclass(frozen=True)
class EvidenceProbabilities:
    """Probabilities of correct and misleading evidence at the end of the trial."""

    truth: Hypothesis
    correct: float
    misleading: float
    inconclusive: float


@dataclass(frozen=True)
class _Integrated:
    """Stagewise stop probabilities with errors of their cumulative sums."""

    h1: list[float]
    h0: list[float]
    cum_err_h1: list[float]
    cum_err_h0: list[float]
    continuation: float
    continuation_err: float
    capped: bool


def _seed(seed: int, stage: int, kind: int) -> np.random.SeedSequence:
    return np.random.SeedSequence(seed, spawn_key=(stage, kind))


def _integrate_sequential(
    regions: StoppingRegions, moments: MvnMoments, config: MvnConfig, seed: int
) -> _Integrated:
    stages = [
        SequentialStage(
            exits=(stage.h1_intervals, stage.h0_intervals),
            continuation=stage.continuation_intervals[0] if stage.continuation_intervals else None,
        )
        for stage in regions.stages
    ]
    result = mvn_sequential(stages, moments, config, _seed(seed, 0, _SEQUENTIAL))
    return _Integrated(
        h1=[float(p) for p in result.exit_probs[:, 0]],
        h0=[float(p) for p in result.exit_probs[:, 1]],
        cum_err_h1=[float(e) for e in result.cum_err[:, 0]],
        cum_err_h0=[float(e) for e in result.cum_err[:, 1]],
        continuation=result.continuation_prob,
        continuation_err=result.continuation_err,
        capped=result.capped,
    )


def _integrate_rectangles(
    regions: StoppingRegions, moments: MvnMoments, config: MvnConfig, seed: int
) -> _Integrated:
    stop_h1: list[MvnResult] = []
    stop_h0: list[MvnResult] = []
    for j, stage in enumerate(regions.stages, start=1):
        marginal = moments.marginal(j)
        stop_h1.append(mvn_prob_union(stage.h1_rects, marginal, config, _seed(seed, j, _STOP_H1)))
        stop_h0.append(mvn_prob_union(stage.h0_rects, marginal, config, _seed(seed, j, _STOP_H0)))
    continuation = mvn_prob_union(
        regions.continuation_rects, moments, config, _seed(seed, regions.m, _CONTINUE)
    )
    return _Integrated(
        h1=[r.prob for r in stop_h1],
        h0=[r.prob for r in stop_h0],
        cum_err_h1=[math.sqrt(v) for v in itertools.accumulate(r.err_est**2 for r in stop_h1)],
        cum_err_h0=[math.sqrt(v) for v in itertools.accumulate(r.err_est**2 for r in stop_h0)],
        continuation=continuation.prob,
        continuation_err=continuation.err_est,
        capped=any(r.capped for r in (*stop_h1, *stop_h0, continuation)),
    )


def _sample_size_moments(
    n_report: FloatArray, stop: FloatArray
) -> tuple[ArmSizes, ArmSizes, ArmSizes]:
    # Every trial still running after stage m-1 ends at stage m.
    weights = stop.copy()
    weights[-1] = max(0.0, 1.0 - float(stop[:-1].sum()))
    mean = weights @ n_report
    second = weights @ n_report**2
    sd = np.sqrt(np.maximum(second - mean**2, 0.0))
    return (
        tuple(float(v) for v in mean),
        tuple(float(v) for v in sd),
        tuple(float(s / e) for s, e in zip(sd, mean, strict=True)),
    )


def _warnings(design: SequentialDesign, regions: StoppingRegions) -> list[str]:
    notes: list[str] = []
    if isinstance(design.info_model, TTestApprox):
        small = [
            j
            for j, stage in enumerate(design.schedule.stages, start=1)
            if design.info_model.effective_n(stage.n_report) < MIN_NORMAL_APPROX_N
        ]
        if small:
            notes.append(
                f"effective sample size below {MIN_NORMAL_APPROX_N:g} at stage(s) "
                f"{', '.join(map(str, small))}; the normal approximation of t may be poor"
            )
    for hyp, flags in (
        ("H1", [s.h1_stoppable for s in regions.stages]),
        ("H0", [s.h0_stoppable for s in regions.stages]),
    ):
        blocked = [j for j, ok in enumerate(flags, start=1) if not ok]
        if blocked:
            notes.append(
                f"evidence for {hyp} cannot be reached at stage(s) {', '.join(map(str, blocked))}"
            )
    return notes


def characteristics(
    design: SequentialDesign,
    config: MvnConfig = DEFAULT_MVN_CONFIG,
    seed: int = 0,
) -> DesignReport:
    """Compute stopping probabilities and sample size moments of a design.

    The probability of stopping at stage ``j`` is the normal probability of the
    stage's region under the first ``j`` coordinates of the prior-predictive
    z-distribution. When every analysis continues on a single interval, all
    stages come from one sequential-conditioning pass; otherwise each region is
    integrated as a union of rectangles.

    Args:
        design: The design.
        config: Accuracy of the rectangle integrals.
        seed: Seed of the integration; equal seeds give equal reports.

    Returns:
        The report.

    Raises:
        DesignError: If the design cannot be evaluated.
        NumericalError: If a critical value or an integral fails.
    """
    with tracer.start_as_current_span("characteristics") as span:
        span.set_attribute("bfseq.analyses", design.m)
        span.set_attribute("bfseq.analysis_prior", design.analysis_prior.family)

        regions = stopping_regions(design)
        moments = z_moments(design.schedule, design.design_prior)
        notes = _warnings(design, regions)
        sequential = all(len(s.continuation_intervals) <= 1 for s in regions.stages)
        span.set_attribute("bfseq.sequential", sequential)
        integrate = _integrate_sequential if sequential else _integrate_rectangles
        result = integrate(regions, moments, config, seed)
        if result.capped:
            notes.append(
                f"multivariate normal integration hit the point cap of "
                f"{config.max_points} per randomization; error estimates exceed "
                f"{config.abs_tol:g}"
            )

        stages: list[StageProbabilities] = []
        cum_h1 = cum_h0 = 0.0
        for j, (h1, h0, err_h1, err_h0, size) in enumerate(
            zip(
                result.h1,
                result.h0,
                result.cum_err_h1,
                result.cum_err_h0,
                design.schedule.stages,
                strict=True,
            ),
            start=1,
        ):
            cum_h1 += h1
            cum_h0 += h0
            stages.append(
                StageProbabilities(
                    stage=j,
                    n_report=size.n_report,
                    cum_h1=cum_h1,
                    cum_h0=cum_h0,
                    cum_inconclusive=1.0 - cum_h1 - cum_h0,
                    h1=h1,
                    h0=h0,
                    err_h1=err_h1,
                    err_h0=err_h0,
                )
            )

        total_err = math.sqrt(
            result.cum_err_h1[-1] ** 2 + result.cum_err_h0[-1] ** 2 + result.continuation_err**2
        )
        gap = abs(stages[-1].cum_inconclusive - result.continuation)
        if gap > max(3.0 * total_err, 1e-9):
            logger.warning(
                "partition_check_failed",
                inconclusive=stages[-1].cum_inconclusive,
                continuation=result.continuation,
                err_est=total_err,
            )
            notes.append(
                f"stopping and continuation probabilities miss 1 by {gap:.2g} "
                f"(error estimate {total_err:.2g})"
            )

        stop = np.array([h1 + h0 for h1, h0 in zip(result.h1, result.h0, strict=True)])
        mean, sd, cov = _sample_size_moments(design.schedule.n_report, stop)

    for note in notes:
        logger.warning("design_warning", note=note)
    logger.debug("characteristics", analyses=design.m, expected_n=mean, sd_n=sd)
    return DesignReport(
        stages=tuple(stages),
        expected_n=mean,
        sd_n=sd,
        cov_n=cov,
        expected_total_n=sum(mean),
        continuation_prob=result.continuation,
        continuation_err=result.continuation_err,
        warnings=tuple(notes),
    )


def evidence_probabilities(report: DesignReport, truth: Hypothesis) -> EvidenceProbabilities:
    """Probabilities of correct and misleading evidence when ``truth`` holds."""
    final = report.final
    if truth is Hypothesis.H1:
        correct, misleading = final.cum_h1, final.cum_h0
    else:
        correct, misleading = final.cum_h0, final.cum_h1
    return EvidenceProbabilities(
        truth=truth,
        correct=correct,
        misleading=misleading,
        inconclusive=final.cum_inconclusive,
    )

"""Monte Carlo simulation of sequential designs in score space.

Each replication draws an effect from the design prior, then independent score
increments with mean ``theta * dI`` and variance ``dI``. The z-statistic of stage
``i`` is the cumulative score divided by ``sqrt(I_i)``.
"""

import math
from collections.abc import Iterator
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from bfseq.design import (
    ArmSizes,
    DesignPrior,
    DesignReport,
    Schedule,
    SequentialDesign,
    stopping_regions,
    z_moments,
)
from bfseq.design.regions import Intervals
from bfseq.errors import DesignError
from bfseq.logging import get_logger
from bfseq.metrics import current_metrics
from bfseq.mvn import FloatArray
from bfseq.tracing import get_tracer

from .config import SimConfig

logger = get_logger(__name__)
tracer = get_tracer(__name__)


@dataclass(frozen=True)
class EmpiricalStage:
    stage: int
    n_report: ArmSizes
    cum_h1: float
    cum_h0: float
    cum_inconclusive: float
    se_h1: float
    se_h0: float


@dataclass(frozen=True)
class EmpiricalReport:
    """Simulated counterpart of a design report.

    Attributes:
        stages: Cumulative stopping proportions with binomial standard errors.
        expected_n: Mean sample size at termination, per arm.
        sd_n: Standard deviation of the sample size at termination, per arm.
        cov_n: Coefficient of variation, per arm.
        se_expected_n: Monte Carlo standard error of ``expected_n``, per arm.
        stop_stage_histogram: Fraction of trials ending at each analysis.
        n_replications: Number of simulated trials.
    """

    stages: tuple[EmpiricalStage, ...]
    expected_n: ArmSizes
    sd_n: ArmSizes
    cov_n: ArmSizes
    se_expected_n: ArmSizes
    stop_stage_histogram: tuple[float, ...]
    n_replications: int


@dataclass(frozen=True)
class MomentCheck:
    """Largest deviations of sampled z moments from their closed form."""

    max_mean_dev: float
    max_cov_dev: float
    max_standardized_dev: float
    n_replications: int


@dataclass(frozen=True)
class ComparisonRow:
    stage: int
    metric: str
    analytic: float
    empirical: float
    combined_se: float
    passed: bool


def _chunks(cfg: SimConfig) -> Iterator[tuple[int, np.random.Generator]]:
    for index, start in enumerate(range(0, cfg.n_replications, cfg.chunk_size)):
        size = min(cfg.chunk_size, cfg.n_replications - start)
        seq = np.random.SeedSequence(cfg.seed, spawn_key=(index,))
        yield size, np.random.default_rng(seq)


def _z_paths(
    rng: np.random.Generator, size: int, info: FloatArray, prior: DesignPrior
) -> FloatArray:
    if prior.is_point:
        theta = np.full(size, prior.mu_d)
    else:
        theta = prior.mu_d + prior.tau_d * rng.standard_normal(size)
    step = np.diff(info, prepend=0.0)
    scores = theta[:, np.newaxis] * step + np.sqrt(step) * rng.standard_normal((size, info.size))
    return np.cumsum(scores, axis=1) / np.sqrt(info)


def _inside(z: FloatArray, intervals: Intervals) -> npt.NDArray[np.bool_]:
    hit = np.zeros(z.shape, dtype=bool)
    for lo, hi in intervals:
        hit |= (z >= lo) & (z <= hi)
    return hit


def _moments(weights: FloatArray, n_report: FloatArray) -> tuple[FloatArray, FloatArray]:
    mean = weights @ n_report
    sd = np.sqrt(np.maximum(weights @ n_report**2 - mean**2, 0.0))
    return mean, sd


def simulate(design: SequentialDesign, cfg: SimConfig) -> EmpiricalReport:
    """Estimate the operating characteristics of ``design`` by simulation.

    Replications are generated in chunks of ``cfg.chunk_size``, each from its own
    child of ``cfg.seed``; results depend only on ``design`` and ``cfg``.
    """
    regions = stopping_regions(design)
    info = design.schedule.info
    m = design.m
    stop_h1 = np.zeros(m, dtype=np.int64)
    stop_h0 = np.zeros(m, dtype=np.int64)
    ended = np.zeros(m, dtype=np.int64)

    with tracer.start_as_current_span("simulate") as span:
        span.set_attribute("bfseq.replications", cfg.n_replications)
        for size, rng in _chunks(cfg):
            z = _z_paths(rng, size, info, design.design_prior)
            active = np.ones(size, dtype=bool)
            for j, stage in enumerate(regions.stages):
                h1 = active & _inside(z[:, j], stage.h1_intervals)
                h0 = active & ~h1 & _inside(z[:, j], stage.h0_intervals)
                stop_h1[j] += int(h1.sum())
                stop_h0[j] += int(h0.sum())
                active &= ~(h1 | h0)
                ended[j] += int((h1 | h0).sum())
            ended[-1] += int(active.sum())
            if (metrics := current_metrics()) is not None:
                metrics.replications.inc(size)

    n = cfg.n_replications
    cum_h1 = np.cumsum(stop_h1) / n
    cum_h0 = np.cumsum(stop_h0) / n
    stages = tuple(
        EmpiricalStage(
            stage=j + 1,
            n_report=design.schedule.stages[j].n_report,
            cum_h1=float(cum_h1[j]),
            cum_h0=float(cum_h0[j]),
            cum_inconclusive=float(1.0 - cum_h1[j] - cum_h0[j]),
            se_h1=math.sqrt(cum_h1[j] * (1.0 - cum_h1[j]) / n),
            se_h0=math.sqrt(cum_h0[j] * (1.0 - cum_h0[j]) / n),
        )
        for j in range(m)
    )
    histogram = ended / n
    mean, sd = _moments(histogram, design.schedule.n_report)
    logger.debug("simulation_done", replications=n, expected_n=mean)
    return EmpiricalReport(
        stages=stages,
        expected_n=tuple(float(v) for v in mean),
        sd_n=tuple(float(v) for v in sd),
        cov_n=tuple(float(s / e) for s, e in zip(sd, mean, strict=True)),
        se_expected_n=tuple(float(s) / math.sqrt(n) for s in sd),
        stop_stage_histogram=tuple(float(v) for v in histogram),
        n_replications=n,
    )


def empirical_cov_check(
    schedule: Schedule, design_prior: DesignPrior, cfg: SimConfig
) -> MomentCheck:
    """Compare sampled z-vectors with their closed-form mean and covariance.

    Standard errors are ``sqrt(S_ii / N)`` for means and
    ``sqrt((S_ij^2 + S_ii S_jj) / N)`` for covariances.
    """
    info = schedule.info
    z = np.concatenate(
        [_z_paths(rng, size, info, design_prior) for size, rng in _chunks(cfg)], axis=0
    )
    expected = z_moments(schedule, design_prior)
    n = z.shape[0]
    mean_dev = np.abs(z.mean(axis=0) - expected.mean)
    sigma = expected.cov
    if n > 1:
        cov_dev = np.abs(np.atleast_2d(np.cov(z, rowvar=False)) - sigma)
    else:
        cov_dev = np.zeros_like(sigma)
    var = np.diag(sigma)
    mean_se = np.sqrt(var / n)
    cov_se = np.sqrt((sigma**2 + np.outer(var, var)) / n)
    standardized = max(float(np.max(mean_dev / mean_se)), float(np.max(cov_dev / cov_se)))
    return MomentCheck(
        max_mean_dev=float(mean_dev.max()),
        max_cov_dev=float(cov_dev.max()),
        max_standardized_dev=standardized,
        n_replications=n,
    )


def _row(
    stage: int, metric: str, analytic: float, empirical: float, se: float, n_se: float
) -> ComparisonRow:
    diff = abs(analytic - empirical)
    return ComparisonRow(
        stage=stage,
        metric=metric,
        analytic=analytic,
        empirical=empirical,
        combined_se=se,
        passed=diff <= n_se * se or diff < 1e-12,
    )


def compare_reports(
    analytic: DesignReport, empirical: EmpiricalReport, n_se: float = 3.0
) -> list[ComparisonRow]:
    """Check an analytic report against a simulated one, stage by stage.

    The standard error of a probability combines the integration error (reported
    as three standard errors) with the binomial error at the analytic value.
    """
    if len(analytic.stages) != len(empirical.stages):
        msg = "reports describe different numbers of analyses"
        raise DesignError(msg)
    n = empirical.n_replications
    rows: list[ComparisonRow] = []
    for a, e in zip(analytic.stages, empirical.stages, strict=True):
        for metric, p, q, err in (
            ("pr_h1", a.cum_h1, e.cum_h1, a.err_h1),
            ("pr_h0", a.cum_h0, e.cum_h0, a.err_h0),
        ):
            p_clip = min(max(p, 0.0), 1.0)
            se = math.sqrt((err / 3.0) ** 2 + p_clip * (1.0 - p_clip) / n)
            rows.append(_row(a.stage, metric, p, q, se, n_se))
    last = analytic.stages[-1].stage
    for arm, (mean, se) in enumerate(
        zip(analytic.expected_n, empirical.se_expected_n, strict=True), start=1
    ):
        rows.append(
            _row(last, f"expected_n{arm}", mean, empirical.expected_n[arm - 1], se, n_se)
        )
    return rows


import dataclasses
from dataclasses import dataclass
from enum import StrEnum
from typing import Self

from bfseq.bayesfactor import AnalysisPriorSpec, CriticalSet, InformedT, critical_t, critical_z
from bfseq.errors import DesignError

from .information import InformationModel, TTestApprox
from .schedule import DesignPrior, Schedule, Thresholds

# Pair families double their rectangles at every analysis.
DEFAULT_MAX_PAIR_ANALYSES = 12


class Hypothesis(StrEnum):
    H0 = "h0"
    H1 = "h1"


@dataclass(frozen=True)
class SequentialDesign:
    """A sequential Bayes factor design and the prior used to evaluate it.

    Attributes:
        schedule: Analyses and their information.
        thresholds: Stopping thresholds on BF01.
        analysis_prior: Prior under H1 used to compute the Bayes factor.
        design_prior: Distribution of the true effect.
        info_model: Map from sample sizes to information.
        max_pair_analyses: Largest number of analyses allowed for priors with two
            critical values per threshold.
    """

    schedule: Schedule
    thresholds: Thresholds
    analysis_prior: AnalysisPriorSpec
    design_prior: DesignPrior
    info_model: InformationModel
    max_pair_analyses: int = DEFAULT_MAX_PAIR_ANALYSES

    def __post_init__(self) -> None:
        if isinstance(self.analysis_prior, InformedT) and not isinstance(
            self.info_model, TTestApprox
        ):
            msg = (
                f"the informed t prior needs a t-test information model, "
                f"got {self.info_model.kind!r}"
            )
            raise DesignError(msg)
        if self.schedule.arms != self.info_model.arms:
            msg = (
                f"schedule has {self.schedule.arms} arm(s) but "
                f"{self.info_model.kind!r} expects {self.info_model.arms}"
            )
            raise DesignError(msg)
        if self.analysis_prior.two_sided and self.schedule.m > self.max_pair_analyses:
            msg = (
                f"{self.schedule.m} analyses with a two-sided analysis prior would need "
                f"{2**self.schedule.m} rectangles at the last stage; use at most "
                f"{self.max_pair_analyses} analyses or raise max_pair_analyses"
            )
            raise DesignError(msg)

    @property
    def m(self) -> int:
        return self.schedule.m

    def with_design_prior(self, design_prior: DesignPrior) -> Self:
        return dataclasses.replace(self, design_prior=design_prior)

    def with_schedule(self, schedule: Schedule) -> Self:
        return dataclasses.replace(self, schedule=schedule)


@dataclass(frozen=True)
class StageCritical:
    """Critical sets of the two thresholds at one analysis."""

    k1: CriticalSet
    k0: CriticalSet


def critical_sets(design: SequentialDesign) -> tuple[StageCritical, ...]:
    """Critical z-values of both thresholds at every analysis.

    For normal-likelihood priors the standard error is ``1 / sqrt(I)``. For the
    informed t prior the critical t-values are used directly as z-values.
    """
    k0, k1 = design.thresholds.k0, design.thresholds.k1
    prior = design.analysis_prior
    result: list[StageCritical] = []
    for stage in design.schedule.stages:
        if isinstance(prior, InformedT):
            assert isinstance(design.info_model, TTestApprox)
            n_eff = design.info_model.effective_n(stage.n_report)
            df = design.info_model.degrees_of_freedom(stage.n_report)
            result.append(
                StageCritical(
                    k1=critical_t(k1, n_eff, df, prior), k0=critical_t(k0, n_eff, df, prior)
                )
            )
        else:
            sigma = stage.info**-0.5
            result.append(
                StageCritical(k1=critical_z(k1, sigma, prior), k0=critical_z(k0, sigma, prior))
            )
    return tuple(result)

"""Stopping regions on the vector of cumulative z-statistics.

At each analysis the real line splits into a set where the trial stops for H1, a
set where it stops for H0 and a continuation set. A stage-j region is the product
of the continuation sets of stages 1..j-1 with a stopping set at stage j, which
becomes a list of disjoint j-dimensional rectangles.
"""

import math
from collections.abc import Sequence
from dataclasses import dataclass

from bfseq.bayesfactor import Interval
from bfseq.logging import get_logger
from bfseq.mvn import HyperRectangle

from .model import SequentialDesign, critical_sets

logger = get_logger(__name__)

Intervals = tuple[Interval, ...]


def _normalize(intervals: Sequence[Interval]) -> Intervals:
    merged: list[Interval] = []
    for lo, hi in sorted(i for i in intervals if i[0] < i[1]):
        if merged and lo <= merged[-1][1]:
            merged[-1] = (merged[-1][0], max(merged[-1][1], hi))
        else:
            merged.append((lo, hi))
    return tuple(merged)


def complement(intervals: Sequence[Interval]) -> Intervals:
    """Gaps between the intervals on the real line; boundaries are ignored."""
    result: list[Interval] = []
    edge = -math.inf
    for lo, hi in _normalize(intervals):
        if lo > edge:
            result.append((edge, lo))
        edge = hi
    if edge < math.inf:
        result.append((edge, math.inf))
    return tuple(result)


def intersect(a: Sequence[Interval], b: Sequence[Interval]) -> Intervals:
    return _normalize(
        [(max(lo1, lo2), min(hi1, hi2)) for lo1, hi1 in _normalize(a) for lo2, hi2 in _normalize(b)]
    )


def difference(a: Sequence[Interval], b: Sequence[Interval]) -> Intervals:
    return intersect(a, complement(b))


@dataclass(frozen=True)
class StageRegions:
    """Stopping and continuation sets of one analysis.

    Attributes:
        h1_rects: Disjoint rectangles where the trial stops here for H1.
        h0_rects: Disjoint rectangles where the trial stops here for H0.
        h1_intervals: Values of this stage's z-statistic giving BF01 <= k1.
        h0_intervals: Values giving BF01 >= k0.
        continuation_intervals: Values giving k1 < BF01 < k0.
        h1_stoppable: Whether the trial can stop for H1 at this analysis.
        h0_stoppable: Whether the trial can stop for H0 at this analysis.
    """

    h1_rects: tuple[HyperRectangle, ...]
    h0_rects: tuple[HyperRectangle, ...]
    h1_intervals: Intervals
    h0_intervals: Intervals
    continuation_intervals: Intervals
    h1_stoppable: bool
    h0_stoppable: bool


@dataclass(frozen=True)
class StoppingRegions:
    """Per-stage regions plus the rectangles still continuing after the last analysis."""

    stages: tuple[StageRegions, ...]
    continuation_rects: tuple[HyperRectangle, ...]

    @property
    def m(self) -> int:
        return len(self.stages)


def _extend(
    rects: Sequence[HyperRectangle], intervals: Intervals
) -> tuple[HyperRectangle, ...]:
    return tuple(rect.extend(lo, hi) for rect in rects for lo, hi in intervals)


def stopping_regions(design: SequentialDesign) -> StoppingRegions:
    """Enumerate the stopping regions of every analysis.

    A threshold that cannot be reached at an analysis leaves that hypothesis
    without a stopping set there.

    Raises:
        DesignError: From design validation.
    """
    stages: list[StageRegions] = []
    continuing: tuple[HyperRectangle, ...] = (HyperRectangle((), ()),)
    for j, crit in enumerate(critical_sets(design), start=1):
        at_least_k1 = _normalize(crit.k1.at_least_intervals())
        h0_intervals = _normalize(crit.k0.at_least_intervals())
        h1_intervals = complement(at_least_k1)
        cont_intervals = difference(at_least_k1, h0_intervals)
        stages.append(
            StageRegions(
                h1_rects=_extend(continuing, h1_intervals),
                h0_rects=_extend(continuing, h0_intervals),
                h1_intervals=h1_intervals,
                h0_intervals=h0_intervals,
                continuation_intervals=cont_intervals,
                h1_stoppable=bool(h1_intervals),
                h0_stoppable=bool(h0_intervals),
            )
        )
        continuing = _extend(continuing, cont_intervals)
        logger.debug(
            "stage_regions",
            stage=j,
            h1=h1_intervals,
            h0=h0_intervals,
            continuing_rects=len(continuing),
        )
    return StoppingRegions(stages=tuple(stages), continuation_rects=continuing)

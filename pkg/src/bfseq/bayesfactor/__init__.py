from .critical import CriticalSet, Interval, Pair, Single, TwoSidedBoundary, Unattainable
from .interpret import interpret_bf01
from .priors import (
    JZS_SCALE,
    AnalysisPriorSpec,
    DirectionalDirectional,
    InformedT,
    PointDirectional,
    PointPoint,
    PointTwoSided,
    PosteriorMoments,
    ZObservation,
    ZPriorSpec,
    posterior_moments,
)
from .tfactors import bf01_t, critical_t, log_bf01_t
from .zfactors import bf01_z, critical_z, log_bf01_z

__all__ = [
    "JZS_SCALE",
    "AnalysisPriorSpec",
    "CriticalSet",
    "DirectionalDirectional",
    "InformedT",
    "Interval",
    "Pair",
    "PointDirectional",
    "PointPoint",
    "PointTwoSided",
    "PosteriorMoments",
    "Single",
    "TwoSidedBoundary",
    "Unattainable",
    "ZObservation",
    "ZPriorSpec",
    "bf01_t",
    "bf01_z",
    "critical_t",
    "critical_z",
    "interpret_bf01",
    "log_bf01_t",
    "log_bf01_z",
    "posterior_moments",
]

from .characteristics import (
    DesignReport,
    EvidenceProbabilities,
    StageProbabilities,
    characteristics,
    evidence_probabilities,
)
from .information import (
    ArmSizes,
    InformationModel,
    TTestApprox,
    TTestDesign,
    TwoProportionsDelta,
    TwoSampleZ,
    UnitVariance,
)
from .model import Hypothesis, SequentialDesign, StageCritical, critical_sets
from .regions import StageRegions, StoppingRegions, stopping_regions
from .schedule import (
    DesignPrior,
    Schedule,
    StageInfo,
    Thresholds,
    build_schedule,
    equal_spacing,
    scaled_schedule,
    z_moments,
)
from .search import LabelledPrior, SweepPoint, find_max_n, sweep

__all__ = [
    "ArmSizes",
    "DesignPrior",
    "DesignReport",
    "EvidenceProbabilities",
    "Hypothesis",
    "InformationModel",
    "LabelledPrior",
    "Schedule",
    "SequentialDesign",
    "StageCritical",
    "StageInfo",
    "StageProbabilities",
    "StageRegions",
    "StoppingRegions",
    "SweepPoint",
    "TTestApprox",
    "TTestDesign",
    "Thresholds",
    "TwoProportionsDelta",
    "TwoSampleZ",
    "UnitVariance",
    "build_schedule",
    "characteristics",
    "critical_sets",
    "equal_spacing",
    "evidence_probabilities",
    "find_max_n",
    "scaled_schedule",
    "stopping_regions",
    "sweep",
    "z_moments",
]

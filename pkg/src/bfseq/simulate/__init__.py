from .config import SimConfig
from .oracle import (
    ComparisonRow,
    EmpiricalReport,
    EmpiricalStage,
    MomentCheck,
    compare_reports,
    empirical_cov_check,
    simulate,
)

__all__ = [
    "ComparisonRow",
    "EmpiricalReport",
    "EmpiricalStage",
    "MomentCheck",
    "SimConfig",
    "compare_reports",
    "empirical_cov_check",
    "simulate",
]

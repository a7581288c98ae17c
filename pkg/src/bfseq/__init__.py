"""bfseq - design calculations for sequential Bayes factor designs without simulation."""

from . import bayesfactor, design, logging, metrics, mvn, numerics, simulate, tracing
from .__meta__ import version as __version__
from .metadata import RunInfo

__all__ = [
    "RunInfo",
    "__version__",
    "bayesfactor",
    "design",
    "logging",
    "metrics",
    "mvn",
    "numerics",
    "simulate",
    "tracing",
]

from .config import MvnConfig
from .integrator import MvnResult, mvn_prob, mvn_prob_union
from .rectangle import FloatArray, HyperRectangle, MvnMoments
from .sequential import SequentialResult, SequentialStage, mvn_sequential

__all__ = [
    "FloatArray",
    "HyperRectangle",
    "MvnConfig",
    "MvnMoments",
    "MvnResult",
    "SequentialResult",
    "SequentialStage",
    "mvn_prob",
    "mvn_prob_union",
    "mvn_sequential",
]

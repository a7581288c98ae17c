from pathlib import Path

import pytest

from bfseq.bayesfactor import PointPoint, PointTwoSided
from bfseq.design import (
    DesignPrior,
    SequentialDesign,
    Thresholds,
    UnitVariance,
    build_schedule,
)
from bfseq.mvn import MvnConfig

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


@pytest.fixture
def configs_dir() -> Path:
    return CONFIGS


@pytest.fixture
def fast_mvn() -> MvnConfig:
    """Loose integration settings for tests that only check structure."""
    return MvnConfig(abs_tol=1e-3, n_randomizations=4, initial_points=256, max_points=4096)


@pytest.fixture
def point_design() -> SequentialDesign:
    """Three looks, point-point prior, unit variance."""
    model = UnitVariance()
    return SequentialDesign(
        schedule=build_schedule(model, [10, 20, 30]),
        thresholds=Thresholds(k0=10.0, k1=0.1),
        analysis_prior=PointPoint(mu=0.5),
        design_prior=DesignPrior.point(0.5),
        info_model=model,
    )


@pytest.fixture
def two_sided_design() -> SequentialDesign:
    """Two looks with a two-sided normal prior; both thresholds reachable at each look."""
    model = UnitVariance()
    return SequentialDesign(
        schedule=build_schedule(model, [60, 120]),
        thresholds=Thresholds(k0=3.0, k1=1 / 3),
        analysis_prior=PointTwoSided(mu=0.0, tau=0.5),
        design_prior=DesignPrior(0.3, 0.1),
        info_model=model,
    )

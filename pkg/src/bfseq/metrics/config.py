import os
from dataclasses import dataclass
from typing import Self

from bfseq._internal import env_bool


@dataclass
class MetricsConfig:
    """Configuration for compute metrics.

    Attributes:
        enabled: Whether computations record counters at all.
        metric_prefix: Prefix for all metric names.
    """

    enabled: bool = True
    metric_prefix: str = "bfseq_"

    @classmethod
    def from_env(cls) -> Self:
        """Create configuration from environment variables.

        Environment variables:
            METRICS_ENABLED: Record compute metrics (default: true).
            METRICS_PREFIX: Prefix for all metrics (default: bfseq_).

        Returns:
            MetricsConfig instance.

        Raises:
            ValueError: If any environment variable has an invalid value.
        """
        return cls(
            enabled=env_bool("METRICS_ENABLED", "true"),
            metric_prefix=os.environ.get("METRICS_PREFIX", "bfseq_"),
        )

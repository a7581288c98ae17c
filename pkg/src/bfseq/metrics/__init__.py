from .collector import ComputeMetrics, MetricsCollector, current_metrics, use_metrics
from .config import MetricsConfig

__all__ = [
    "ComputeMetrics",
    "MetricsCollector",
    "MetricsConfig",
    "current_metrics",
    "use_metrics",
]

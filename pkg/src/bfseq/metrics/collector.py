from collections.abc import Iterator, MutableMapping, Sequence
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass
from pathlib import Path
from typing import Self

from prometheus_client import CollectorRegistry, Counter, Histogram, write_to_textfile
from prometheus_client.registry import Collector

from .config import MetricsConfig


class MetricsCollector:
    """Prometheus registry holder that prefixes and tracks the metrics it creates."""

    def __init__(self, config: MetricsConfig | None = None) -> None:
        """Initialize metrics collector.

        Args:
            config: Configuration for metrics collection. If None, uses defaults.
        """
        self._config = config or MetricsConfig()
        self._registry = CollectorRegistry()
        self._metrics: MutableMapping[str, Collector] = {}

    @property
    def config(self) -> MetricsConfig:
        return self._config

    @property
    def registry(self) -> CollectorRegistry:
        return self._registry

    def register(self, name: str, collector: Collector) -> None:
        self._registry.register(collector)
        self._metrics[name] = collector

    def unregister(self, name: str) -> None:
        if collector := self._metrics.pop(name, None):
            self._registry.unregister(collector)

    def clear(self) -> None:
        """Unregister every metric created through this collector."""
        for name in list(self._metrics):
            self.unregister(name)

    def create_counter(
        self,
        name: str,
        documentation: str,
        labelnames: list[str] | None = None,
    ) -> Counter:
        """Create a Counter metric and register it with this collector.

        Args:
            name: Name of the metric, without prefix.
            documentation: Help text for the metric.
            labelnames: List of label names for the metric.

        Returns:
            Counter metric instance.
        """
        counter = Counter(
            f"{self._config.metric_prefix}{name}",
            documentation,
            labelnames=labelnames or [],
            registry=None,
        )
        self.register(name, counter)
        return counter

    def create_histogram(
        self,
        name: str,
        documentation: str,
        labelnames: list[str] | None = None,
        buckets: Sequence[float | str] = Histogram.DEFAULT_BUCKETS,
    ) -> Histogram:
        """Create a Histogram metric and register it with this collector.

        Args:
            name: Name of the metric, without prefix.
            documentation: Help text for the metric.
            labelnames: List of label names for the metric.
            buckets: Histogram buckets.

        Returns:
            Histogram metric instance.
        """
        histogram = Histogram(
            name=f"{self._config.metric_prefix}{name}",
            documentation=documentation,
            labelnames=labelnames or [],
            registry=None,
            buckets=buckets,
        )
        self.register(name, histogram)
        return histogram

    def write_textfile(self, path: Path) -> None:
        """Write the registry in the Prometheus text exposition format."""
        write_to_textfile(str(path), self._registry)


@dataclass(frozen=True)
class ComputeMetrics:
    """Counters describing how much numerical work a run performed."""

    mvn_integrals: Counter
    qmc_points: Counter
    critical_values: Counter
    replications: Counter
    command_seconds: Histogram

    @classmethod
    def create(cls, collector: MetricsCollector) -> Self:
        return cls(
            mvn_integrals=collector.create_counter(
                "mvn_integrals", "Multivariate normal rectangle integrals evaluated", ["kind"]
            ),
            qmc_points=collector.create_counter(
                "qmc_points", "Quasi-Monte Carlo points evaluated across randomizations"
            ),
            critical_values=collector.create_counter(
                "critical_values", "Bayes factor critical values computed", ["family"]
            ),
            replications=collector.create_counter(
                "replications", "Simulated sequential trials"
            ),
            command_seconds=collector.create_histogram(
                "command_seconds",
                "Wall time per command",
                ["command"],
                buckets=(0.1, 0.5, 1.0, 5.0, 10.0, 30.0, 60.0, 300.0, float("inf")),
            ),
        )


_active: ContextVar[ComputeMetrics | None] = ContextVar("bfseq_compute_metrics", default=None)


def current_metrics() -> ComputeMetrics | None:
    """Return the metrics bound to the current context, if any."""
    return _active.get()


@contextmanager
def use_metrics(metrics: ComputeMetrics | None) -> Iterator[ComputeMetrics | None]:
    """Record compute counters into ``metrics`` for the duration of the block."""
    token = _active.set(metrics)
    try:
        yield metrics
    finally:
        _active.reset(token)

import pytest
from prometheus_client import generate_latest

from bfseq.metrics import (
    ComputeMetrics,
    MetricsCollector,
    MetricsConfig,
    current_metrics,
    use_metrics,
)


class TestMetricsConfig:
    """Tests for MetricsConfig class."""

    def test_default_config(self):
        """Test default configuration values."""
        config = MetricsConfig()

        assert config.enabled is True
        assert config.metric_prefix == "bfseq_"

    def test_from_env_defaults(self, monkeypatch):
        """Test MetricsConfig.from_env with no variables set."""
        monkeypatch.delenv("METRICS_ENABLED", raising=False)
        monkeypatch.delenv("METRICS_PREFIX", raising=False)

        assert MetricsConfig.from_env() == MetricsConfig()

    def test_from_env_custom(self, monkeypatch):
        """Test MetricsConfig.from_env with custom values."""
        monkeypatch.setenv("METRICS_ENABLED", "false")
        monkeypatch.setenv("METRICS_PREFIX", "run_")

        config = MetricsConfig.from_env()

        assert config.enabled is False
        assert config.metric_prefix == "run_"

    def test_from_env_invalid(self, monkeypatch):
        """Test an invalid boolean raises ValueError."""
        monkeypatch.setenv("METRICS_ENABLED", "perhaps")

        with pytest.raises(ValueError, match="Invalid boolean value for METRICS_ENABLED"):
            MetricsConfig.from_env()


class TestMetricsCollector:
    """Tests for MetricsCollector class."""

    def test_counter_is_prefixed(self):
        """Test created metrics carry the configured prefix."""
        collector = MetricsCollector(MetricsConfig(metric_prefix="t_"))
        counter = collector.create_counter("points", "Points")
        counter.inc(3)

        assert collector.registry.get_sample_value("t_points_total") == 3.0

    def test_histogram_with_labels(self):
        """Test histograms record observations per label."""
        collector = MetricsCollector()
        histogram = collector.create_histogram("seconds", "Time", ["command"], buckets=(1.0, 2.0))
        histogram.labels(command="bf").observe(1.5)

        value = collector.registry.get_sample_value(
            "bfseq_seconds_count", {"command": "bf"}
        )
        assert value == 1.0

    def test_clear_unregisters(self):
        """Test clear removes every metric from the registry."""
        collector = MetricsCollector()
        collector.create_counter("points", "Points").inc()

        collector.clear()

        assert b"bfseq_points" not in generate_latest(collector.registry)
        collector.create_counter("points", "Points")

    def test_unregister_unknown_is_noop(self):
        """Test unregistering a missing name does nothing."""
        MetricsCollector().unregister("missing")

    def test_write_textfile(self, tmp_path):
        """Test metrics are written in the text exposition format."""
        collector = MetricsCollector()
        collector.create_counter("points", "Points").inc(7)
        path = tmp_path / "metrics.prom"

        collector.write_textfile(path)

        assert "bfseq_points_total 7.0" in path.read_text()


class TestComputeMetrics:
    """Tests for ComputeMetrics and its context binding."""

    def test_create_registers_all(self):
        """Test every compute metric is registered."""
        collector = MetricsCollector()
        metrics = ComputeMetrics.create(collector)
        metrics.mvn_integrals.labels(kind="h1").inc()
        metrics.critical_values.labels(family="point-point").inc(2)
        metrics.command_seconds.labels(command="bf").observe(0.01)

        registry = collector.registry
        assert registry.get_sample_value("bfseq_mvn_integrals_total", {"kind": "h1"}) == 1.0
        assert (
            registry.get_sample_value("bfseq_critical_values_total", {"family": "point-point"})
            == 2.0
        )
        assert registry.get_sample_value("bfseq_replications_total") == 0.0

    def test_no_metrics_by_default(self):
        """Test nothing is bound outside use_metrics."""
        assert current_metrics() is None

    def test_use_metrics_binds_and_resets(self):
        """Test use_metrics binds for the block only."""
        metrics = ComputeMetrics.create(MetricsCollector())

        with use_metrics(metrics) as bound:
            assert bound is metrics
            assert current_metrics() is metrics

        assert current_metrics() is None

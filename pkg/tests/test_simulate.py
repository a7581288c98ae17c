import pytest

from bfseq.cli import DesignConfig
from bfseq.design import DesignPrior, build_schedule, characteristics
from bfseq.design.information import UnitVariance
from bfseq.errors import ConfigError, DesignError
from bfseq.metrics import ComputeMetrics, MetricsCollector, use_metrics
from bfseq.simulate import SimConfig, compare_reports, empirical_cov_check, simulate


class TestSimConfig:
    """Tests for SimConfig class."""

    def test_defaults(self):
        """Test default simulation settings."""
        cfg = SimConfig()

        assert cfg.n_replications == 100_000
        assert cfg.seed == 0
        assert cfg.chunk_size == 10_000

    @pytest.mark.parametrize(
        ("kwargs", "match"),
        [
            ({"n_replications": 0}, "n_replications must be at least 1"),
            ({"seed": -1}, "seed must be non-negative"),
            ({"chunk_size": 0}, "chunk_size must be at least 1"),
        ],
    )
    def test_invalid(self, kwargs, match):
        """Test invalid settings raise ConfigError."""
        with pytest.raises(ConfigError, match=match):
            SimConfig(**kwargs)


class TestSimulate:
    """Tests for simulate function."""

    def test_deterministic(self, point_design):
        """Test equal settings reproduce the same report."""
        cfg = SimConfig(n_replications=5_000, seed=4, chunk_size=1_000)

        assert simulate(point_design, cfg) == simulate(point_design, cfg)

    def test_seed_changes_result(self, two_sided_design):
        """Test different seeds draw different trials."""
        first = simulate(two_sided_design, SimConfig(n_replications=5_000, seed=1))
        second = simulate(two_sided_design, SimConfig(n_replications=5_000, seed=2))

        assert first != second

    def test_report_structure(self, point_design):
        """Test proportions, histogram and sample size moments are consistent."""
        report = simulate(point_design, SimConfig(n_replications=2_000, seed=1, chunk_size=300))

        assert report.n_replications == 2_000
        assert len(report.stages) == 3
        assert sum(report.stop_stage_histogram) == pytest.approx(1.0)
        for stage in report.stages:
            total = stage.cum_h1 + stage.cum_h0 + stage.cum_inconclusive
            assert total == pytest.approx(1.0)
        assert 10.0 <= report.expected_n[0] <= 30.0
        assert report.se_expected_n[0] == pytest.approx(report.sd_n[0] / 2_000**0.5)

    def test_counts_replications(self, point_design):
        """Test simulated trials are counted when metrics are bound."""
        collector = MetricsCollector()

        with use_metrics(ComputeMetrics.create(collector)):
            simulate(point_design, SimConfig(n_replications=2_500, chunk_size=1_000))

        assert collector.registry.get_sample_value("bfseq_replications_total") == 2_500.0


class TestEmpiricalCovCheck:
    """Tests for empirical_cov_check function."""

    def test_moments_match(self):
        """Test sampled z-vectors match the closed-form moments."""
        schedule = build_schedule(UnitVariance(), [10, 25, 40, 80])

        check = empirical_cov_check(
            schedule, DesignPrior(0.2, 0.3), SimConfig(n_replications=40_000, seed=5)
        )

        assert check.n_replications == 40_000
        assert check.max_standardized_dev < 5.0
        assert check.max_mean_dev < 0.05

    def test_point_prior(self):
        """Test the canonical covariance under a point prior."""
        schedule = build_schedule(UnitVariance(), [1, 4])

        check = empirical_cov_check(
            schedule, DesignPrior.point(0.5), SimConfig(n_replications=20_000, seed=6)
        )

        assert check.max_standardized_dev < 5.0

    @pytest.mark.slow
    @pytest.mark.parametrize("m", [2, 5])
    @pytest.mark.parametrize("tau_d", [0.0, 0.05, 0.2])
    def test_moment_grid(self, tau_d, m):
        """Test sampled z-vectors over design prior spreads and numbers of looks."""
        schedule = build_schedule(UnitVariance(), [20.0 * j for j in range(1, m + 1)])

        check = empirical_cov_check(
            schedule, DesignPrior(0.3, tau_d), SimConfig(n_replications=100_000, seed=m)
        )

        assert check.n_replications == 100_000
        # Largest of all mean and covariance deviations, in standard errors.
        assert check.max_standardized_dev < 4.0


class TestCompareReports:
    """Tests for compare_reports function."""

    def test_agreement(self, point_design):
        """Test analytic and simulated probabilities agree."""
        analytic = characteristics(point_design, seed=2)
        empirical = simulate(point_design, SimConfig(n_replications=40_000, seed=2))

        rows = compare_reports(analytic, empirical, n_se=4.0)

        assert [r.metric for r in rows[:2]] == ["pr_h1", "pr_h0"]
        assert rows[-1].metric == "expected_n1"
        assert all(r.passed for r in rows)

    def test_stage_mismatch(self, point_design):
        """Test reports with different numbers of analyses are rejected."""
        analytic = characteristics(point_design)
        shorter = point_design.with_schedule(build_schedule(UnitVariance(), [10, 20]))
        empirical = simulate(shorter, SimConfig(n_replications=100))

        with pytest.raises(DesignError, match="different numbers of analyses"):
            compare_reports(analytic, empirical)

    @pytest.mark.slow
    @pytest.mark.parametrize(
        ("name", "n_se"),
        [
            ("appendix-a", 3.0),
            ("low-pv", 3.0),
            ("low-pv-null", 3.0),
            ("two-sided-m4", 3.0),
            ("schoenbrodt", 4.0),
        ],
    )
    def test_bundled_designs(self, configs_dir, name, n_se):
        """Test every bundled design against 100000 simulated trials."""
        config = DesignConfig.load(configs_dir / f"{name}.json")
        design = config.design()

        analytic = characteristics(design, config.mvn, config.seed)
        empirical = simulate(design, SimConfig(seed=config.seed))

        failed = [r for r in compare_reports(analytic, empirical, n_se) if not r.passed]
        assert failed == []

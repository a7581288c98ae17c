import itertools
import math

import numpy as np
import pytest
from scipy import stats

from bfseq.errors import CholeskyError, ConfigError, DesignError
from bfseq.metrics import ComputeMetrics, MetricsCollector, use_metrics
from bfseq.mvn import (
    HyperRectangle,
    MvnConfig,
    MvnMoments,
    SequentialStage,
    mvn_prob,
    mvn_prob_union,
    mvn_sequential,
)

INF = math.inf


def _equicorrelated(d: int, rho: float) -> MvnMoments:
    cov = np.full((d, d), rho)
    np.fill_diagonal(cov, 1.0)
    return MvnMoments(np.zeros(d), cov)


def _canonical(info: np.ndarray) -> MvnMoments:
    cov = np.sqrt(np.minimum.outer(info, info) / np.maximum.outer(info, info))
    return MvnMoments(np.zeros(len(info)), cov)


class TestMvnConfig:
    """Tests for MvnConfig class."""

    def test_defaults(self):
        """Test default accuracy settings."""
        config = MvnConfig()

        assert config.abs_tol == 5e-5
        assert config.n_randomizations == 10
        assert config.initial_points == 1024
        assert config.max_points == 65536

    @pytest.mark.parametrize(
        ("kwargs", "match"),
        [
            ({"abs_tol": 0.0}, "abs_tol must be positive"),
            ({"n_randomizations": 1}, "n_randomizations must be at least 2"),
            ({"initial_points": 1000}, "initial_points must be a positive power of two"),
            ({"initial_points": 2048, "max_points": 1024}, "at least initial_points"),
        ],
    )
    def test_invalid(self, kwargs, match):
        """Test invalid settings raise ConfigError."""
        with pytest.raises(ConfigError, match=match):
            MvnConfig(**kwargs)


class TestHyperRectangle:
    """Tests for HyperRectangle class."""

    def test_extend(self):
        """Test appending a coordinate to the empty rectangle."""
        rect = HyperRectangle((), ()).extend(-INF, 1.0).extend(0.0, INF)

        assert rect.dim == 2
        assert rect.lower == (-INF, 0.0)
        assert rect.upper == (1.0, INF)

    def test_contains(self):
        """Test membership is closed on both sides."""
        rect = HyperRectangle.from_bounds([0, 0], [1, 1])

        inside = rect.contains([[0.0, 1.0], [0.5, 0.5], [1.5, 0.5]])

        assert inside.tolist() == [True, True, False]

    def test_invalid_bounds(self):
        """Test empty or mismatched bounds raise ConfigError."""
        with pytest.raises(ConfigError, match="must be below upper bound"):
            HyperRectangle((1.0,), (1.0,))
        with pytest.raises(ConfigError, match="bound lengths differ"):
            HyperRectangle((0.0,), (1.0, 2.0))


class TestMvnMoments:
    """Tests for MvnMoments class."""

    def test_marginal(self):
        """Test leading marginals keep the leading block."""
        moments = MvnMoments(np.array([1.0, 2.0, 3.0]), np.eye(3) + 0.1)

        marginal = moments.marginal(2)

        assert marginal.dim == 2
        np.testing.assert_allclose(marginal.mean, [1.0, 2.0])
        np.testing.assert_allclose(marginal.cov, np.eye(2) + 0.1)

    def test_marginal_out_of_range(self):
        """Test marginal dimensions outside 1..d raise DesignError."""
        with pytest.raises(DesignError, match="within 1..1"):
            MvnMoments(np.zeros(1), np.eye(1)).marginal(2)

    def test_not_positive_definite(self):
        """Test singular covariances raise CholeskyError."""
        with pytest.raises(CholeskyError, match="not positive definite"):
            MvnMoments(np.zeros(2), np.ones((2, 2)))

    def test_not_symmetric(self):
        """Test asymmetric covariances raise ConfigError."""
        with pytest.raises(ConfigError, match="not symmetric"):
            MvnMoments(np.zeros(2), np.array([[1.0, 0.2], [0.1, 1.0]]))

    def test_shape_mismatch(self):
        """Test mean and covariance sizes must agree."""
        with pytest.raises(DesignError, match="does not match mean length"):
            MvnMoments(np.zeros(3), np.eye(2))


class TestMvnProb:
    """Tests for mvn_prob and mvn_prob_union."""

    def test_univariate_is_exact(self):
        """Test one-dimensional probabilities use the normal cdf."""
        moments = MvnMoments(np.array([0.5]), np.array([[4.0]]))

        result = mvn_prob(HyperRectangle((-1.0,), (2.0,)), moments)

        expected = stats.norm.cdf(2.0, 0.5, 2.0) - stats.norm.cdf(-1.0, 0.5, 2.0)
        assert result.prob == pytest.approx(expected, abs=1e-14)
        assert result.err_est == 1e-15
        assert result.n_points == 0

    def test_bivariate_orthant(self):
        """Test the negative quadrant of a correlated pair is 1/3 at rho = 0.5."""
        prob, err = mvn_prob(HyperRectangle((-INF, -INF), (0.0, 0.0)), _equicorrelated(2, 0.5))

        assert prob == pytest.approx(1 / 3, abs=3e-4)
        assert err <= 5e-5

    def test_trivariate_orthant(self):
        """Test the trivariate equicorrelated orthant probability of 1/4."""
        rect = HyperRectangle((-INF,) * 3, (0.0,) * 3)

        result = mvn_prob(rect, _equicorrelated(3, 0.5))

        assert result.prob == pytest.approx(0.25, abs=3e-4)
        assert not result.capped

    def test_against_scipy(self):
        """Test a finite box with a nonzero mean against scipy's integrator."""
        mean = np.array([0.3, -0.2, 0.1])
        cov = np.array([[1.0, 0.6, 0.4], [0.6, 1.0, 0.7], [0.4, 0.7, 1.0]])
        lower, upper = np.array([-1.0, -0.5, -INF]), np.array([1.5, 1.0, 0.8])

        result = mvn_prob(HyperRectangle.from_bounds(lower, upper), MvnMoments(mean, cov))

        reference = stats.multivariate_normal(mean, cov).cdf(upper, lower_limit=lower)
        assert result.prob == pytest.approx(reference, abs=1e-3)

    def test_same_seed_same_result(self):
        """Test equal seeds reproduce estimates bit for bit."""
        rect = HyperRectangle((-1.0, -INF, 0.0), (INF, 1.0, 2.0))
        moments = _equicorrelated(3, 0.3)

        first = mvn_prob(rect, moments, seed=np.random.SeedSequence(7, spawn_key=(1, 2)))
        second = mvn_prob(rect, moments, seed=np.random.SeedSequence(7, spawn_key=(1, 2)))

        assert first == second

    def test_point_cap(self):
        """Test an unreachable tolerance stops at the point cap."""
        config = MvnConfig(abs_tol=1e-12, n_randomizations=2, initial_points=64, max_points=128)
        rect = HyperRectangle((-INF, -INF), (0.0, 0.0))

        result = mvn_prob(rect, _equicorrelated(2, 0.5), config)

        assert result.capped is True
        assert result.n_points == 2 * 128

    def test_dimension_mismatch(self):
        """Test rectangle and distribution dimensions must agree."""
        with pytest.raises(DesignError, match="does not match distribution dimension"):
            mvn_prob(HyperRectangle((0.0,), (1.0,)), _equicorrelated(2, 0.1))

    def test_union_sums_disjoint_members(self):
        """Test a split of the plane into quadrants sums to one."""
        moments = _equicorrelated(2, 0.4)
        quadrants = [
            HyperRectangle((lo1, lo2), (hi1, hi2))
            for lo1, hi1 in ((-INF, 0.0), (0.0, INF))
            for lo2, hi2 in ((-INF, 0.0), (0.0, INF))
        ]

        result = mvn_prob_union(quadrants, moments)

        assert result.prob == pytest.approx(1.0, abs=3e-4)

    def test_union_of_nothing(self):
        """Test the empty union has probability zero."""
        result = mvn_prob_union([], _equicorrelated(2, 0.4))

        assert (result.prob, result.err_est) == (0.0, 0.0)

    def test_records_metrics(self):
        """Test integrals are counted by kind when metrics are bound."""
        collector = MetricsCollector()
        rects = [HyperRectangle((-INF,), (0.0,)), HyperRectangle((0.0,), (INF,))]

        with use_metrics(ComputeMetrics.create(collector)):
            mvn_prob_union(rects, MvnMoments(np.zeros(1), np.eye(1)))

        value = collector.registry.get_sample_value(
            "bfseq_mvn_integrals_total", {"kind": "exact"}
        )
        assert value == 2.0

    @pytest.mark.parametrize("d", [2, 3])
    def test_partition_sums_to_one(self, d):
        """Test the boxes of an uneven grid over the whole space sum to one."""
        info = np.arange(1.0, d + 1.0)
        moments = MvnMoments(np.linspace(0.2, 0.6, d), _canonical(info).cov)
        cuts = (-0.4, 0.9, 1.7)
        pieces = ((-INF, cuts[0]), (cuts[0], cuts[1]), (cuts[1], cuts[2]), (cuts[2], INF))
        boxes = [
            HyperRectangle(tuple(lo for lo, _ in combo), tuple(hi for _, hi in combo))
            for combo in itertools.product(pieces, repeat=d)
        ]

        result = mvn_prob_union(boxes, moments)

        assert result.prob == pytest.approx(1.0, abs=max(3 * result.err_est, 1e-4))

    @pytest.mark.parametrize(
        ("inner", "outer"),
        [
            (((-1.0, -1.0, -1.0), (1.0, 1.0, 1.0)), ((-2.0, -1.0, -1.0), (1.0, 2.0, 1.0))),
            (((0.0, -INF, 0.5), (1.0, 0.0, 2.0)), ((0.0, -INF, 0.0), (INF, 0.5, 2.0))),
            (((-0.5, -0.5, -0.5), (0.5, 0.5, 0.5)), ((-INF, -INF, -INF), (INF, INF, INF))),
        ],
    )
    def test_larger_box_has_larger_probability(self, inner, outer):
        """Test probabilities grow with the box up to the error estimates."""
        moments = _canonical(np.array([1.0, 2.5, 4.0]))

        small = mvn_prob(HyperRectangle(*inner), moments)
        large = mvn_prob(HyperRectangle(*outer), moments)

        assert small.prob <= large.prob + small.err_est + large.err_est

    @pytest.mark.slow
    def test_sixty_one_looks_against_monte_carlo(self):
        """Test a 61-dimensional canonical box against a simulated random walk."""
        info = np.arange(1.0, 62.0)
        upper = np.full(61, 2.2)
        rng = np.random.default_rng(61)
        inside = 0
        n_draws, chunk = 1_000_000, 50_000
        for _ in range(n_draws // chunk):
            walk = np.cumsum(rng.standard_normal((chunk, 61)), axis=1) / np.sqrt(info)
            inside += int(np.count_nonzero((walk <= upper).all(axis=1)))
        expected = inside / n_draws
        se = math.sqrt(expected * (1.0 - expected) / n_draws)

        result = mvn_prob(HyperRectangle((-INF,) * 61, tuple(upper)), _canonical(info))

        assert abs(result.prob - expected) <= 3.0 * math.hypot(se, result.err_est / 3.0)


class TestMvnSequential:
    """Tests for mvn_sequential function."""

    @staticmethod
    def _stages() -> list[SequentialStage]:
        return [
            SequentialStage(exits=(((2.5, INF),), ((-INF, -1.0),)), continuation=(-1.0, 2.5)),
            SequentialStage(exits=(((2.2, INF),), ((-INF, -0.5),)), continuation=(-0.5, 2.2)),
            SequentialStage(exits=(((2.0, INF),), ((-INF, 2.0),)), continuation=None),
        ]

    def test_univariate_is_exact(self):
        """Test a single stage uses the normal cdf."""
        stage = SequentialStage(exits=(((1.0, INF),), ((-INF, -1.0),)), continuation=(-1.0, 1.0))
        dist = stats.norm(0.3, 2.0)

        result = mvn_sequential([stage], MvnMoments(np.array([0.3]), np.array([[4.0]])))

        assert result.exit_probs[0] == pytest.approx([dist.sf(1.0), dist.cdf(-1.0)], abs=1e-14)
        assert result.continuation_prob == pytest.approx(dist.cdf(1.0) - dist.cdf(-1.0))
        assert result.n_points == 0

    def test_matches_rectangles(self):
        """Test every exit probability against the rectangle integrator."""
        moments = MvnMoments(np.array([0.5, 0.7, 0.87]), _canonical(np.array([1.0, 2.0, 3.0])).cov)
        stages = self._stages()

        result = mvn_sequential(stages, moments)

        for j, stage in enumerate(stages):
            for kind, ((lo, hi),) in enumerate(stage.exits):
                lower = [s.continuation[0] for s in stages[:j]] + [lo] + [-INF] * (2 - j)
                upper = [s.continuation[1] for s in stages[:j]] + [hi] + [INF] * (2 - j)
                rect = mvn_prob(HyperRectangle(tuple(lower), tuple(upper)), moments)
                assert result.exit_probs[j, kind] == pytest.approx(rect.prob, abs=1e-3)
        assert result.exit_probs.sum() == pytest.approx(1.0, abs=1e-3)
        assert result.continuation_prob == 0.0

    def test_cumulative_errors(self):
        """Test error estimates are reported per stage and stay within tolerance."""
        moments = _canonical(np.array([1.0, 2.0, 3.0]))

        result = mvn_sequential(self._stages(), moments)

        assert result.cum_err.shape == (3, 2)
        assert not result.capped
        assert float(result.cum_err.max()) <= MvnConfig().abs_tol

    def test_same_seed_same_result(self):
        """Test equal seeds reproduce estimates bit for bit."""
        moments = _canonical(np.array([1.0, 2.0, 3.0]))

        first = mvn_sequential(self._stages(), moments, seed=11)
        second = mvn_sequential(self._stages(), moments, seed=11)

        assert np.array_equal(first.exit_probs, second.exit_probs)

    def test_records_metrics(self):
        """Test sequential integrals are counted under their own kind."""
        collector = MetricsCollector()

        with use_metrics(ComputeMetrics.create(collector)):
            mvn_sequential(self._stages(), _canonical(np.array([1.0, 2.0, 3.0])))

        value = collector.registry.get_sample_value(
            "bfseq_mvn_integrals_total", {"kind": "sequential"}
        )
        assert value == 1.0

    def test_stage_count_mismatch(self):
        """Test the number of stages must equal the dimension."""
        with pytest.raises(DesignError, match="2 stage\\(s\\) given for a 3-dimensional"):
            mvn_sequential(self._stages()[:2], _canonical(np.array([1.0, 2.0, 3.0])))

    def test_exit_count_mismatch(self):
        """Test every stage must list the same number of exit sets."""
        stages = self._stages()
        stages[1] = SequentialStage(exits=(((2.2, INF),),), continuation=(-INF, 2.2))

        with pytest.raises(DesignError, match="same number of exit sets"):
            mvn_sequential(stages, _canonical(np.array([1.0, 2.0, 3.0])))


import math

import numpy as np
import pytest
from scipy import stats

from bfseq.bayesfactor import DirectionalDirectional, InformedT, PointPoint, PointTwoSided, Single
from bfseq.cli import DesignConfig
from bfseq.design import (
    DesignPrior,
    Hypothesis,
    LabelledPrior,
    SequentialDesign,
    Thresholds,
    TTestApprox,
    TTestDesign,
    TwoProportionsDelta,
    TwoSampleZ,
    UnitVariance,
    build_schedule,
    characteristics,
    critical_sets,
    equal_spacing,
    evidence_probabilities,
    find_max_n,
    scaled_schedule,
    stopping_regions,
    sweep,
    z_moments,
)
from bfseq.design.regions import complement, difference, intersect
from bfseq.errors import ConfigError, DesignError, TargetUnreachableError
from bfseq.mvn import mvn_prob_union

INF = math.inf


def _load(configs_dir, name):
    config = DesignConfig.load(configs_dir / f"{name}.json")
    return config, config.design()


class TestInformationModels:
    """Tests for the information models."""

    def test_unit_variance(self):
        """Test information is n over the variance."""
        assert UnitVariance(lambda2=4.0).information((20.0,)) == 5.0

    def test_two_sample_z(self):
        """Test the harmonic combination of two arms."""
        assert TwoSampleZ().information((25.0, 25.0)) == 12.5

    def test_two_proportions_delta(self):
        """Test the delta-method information of a log odds ratio."""
        model = TwoProportionsDelta(pi0=0.5, pi1=0.75)

        assert model.information((50.0, 50.0)) == pytest.approx(150 / 28)

    def test_t_test_two_sample(self):
        """Test effective sample size and degrees of freedom of two groups."""
        model = TTestApprox(TTestDesign.TWO_SAMPLE)

        assert model.arms == 2
        assert model.effective_n((20.0, 20.0)) == 10.0
        assert model.degrees_of_freedom((20.0, 20.0)) == 38.0
        assert model.information((20.0, 30.0)) == 12.0

    def test_t_test_one_sample(self):
        """Test one-sample designs use n and n - 1."""
        model = TTestApprox(TTestDesign.PAIRED)

        assert model.arms == 1
        assert model.effective_n((15.0,)) == 15.0
        assert model.degrees_of_freedom((15.0,)) == 14.0

    def test_wrong_number_of_arms(self):
        """Test sizes must match the number of arms."""
        with pytest.raises(ConfigError, match="expected 2 sample size"):
            TwoSampleZ().information((10.0,))

    def test_invalid_parameters(self):
        """Test invalid model parameters raise ConfigError."""
        with pytest.raises(ConfigError, match="pi1 must lie strictly between 0 and 1"):
            TwoProportionsDelta(pi0=0.5, pi1=1.0)
        with pytest.raises(ConfigError, match="lambda2 must be positive"):
            UnitVariance(lambda2=0.0)


class TestSchedule:
    """Tests for build_schedule and equal spacing."""

    def test_unit_variance(self):
        """Test information equals n with unit variance."""
        schedule = build_schedule(UnitVariance(), [10, 20])

        np.testing.assert_allclose(schedule.info, [10.0, 20.0])
        assert schedule.m == 2
        assert schedule.arms == 1

    def test_two_sample_equal_arms(self):
        """Test scalar sizes mean equal arms."""
        schedule = build_schedule(TwoSampleZ(), [25, 50])

        np.testing.assert_allclose(schedule.info, [12.5, 25.0])
        np.testing.assert_allclose(schedule.n_report, [[25.0, 25.0], [50.0, 50.0]])

    def test_unequal_arms(self):
        """Test per-arm lists are kept as given."""
        schedule = build_schedule(TwoSampleZ(), [[26, 24], [50, 50]])

        assert schedule.stages[0].n_report == (26.0, 24.0)
        assert schedule.stages[0].info == pytest.approx(26 * 24 / 50)

    def test_not_increasing(self):
        """Test repeated sizes are rejected."""
        with pytest.raises(ConfigError, match="increase strictly"):
            build_schedule(UnitVariance(), [20, 20])

    def test_empty(self):
        """Test a schedule needs an analysis."""
        with pytest.raises(ConfigError, match="at least one analysis"):
            build_schedule(UnitVariance(), [])

    def test_wrong_arm_list(self):
        """Test per-arm lists of the wrong length are rejected."""
        with pytest.raises(ConfigError, match="expected 2 sample size"):
            build_schedule(TwoSampleZ(), [[10, 10, 10]])

    def test_equal_spacing(self):
        """Test equally spaced sizes with and without rounding."""
        assert equal_spacing(100, 3) == [33.0, 67.0, 100.0]
        assert equal_spacing(100, 4, rounding=False) == [25.0, 50.0, 75.0, 100.0]

    def test_equal_spacing_needs_a_look(self):
        """Test zero analyses are rejected."""
        with pytest.raises(ConfigError, match="at least 1"):
            equal_spacing(100, 0)

    def test_scaled_schedule(self):
        """Test the scaled schedule ends at the maximum size."""
        schedule = scaled_schedule(TwoSampleZ(), 90, 3)

        assert [s.n_report for s in schedule.stages] == [(30.0,) * 2, (60.0,) * 2, (90.0,) * 2]


class TestThresholdsAndPriors:
    """Tests for Thresholds and DesignPrior."""

    def test_k0_must_exceed_one(self):
        """Test k0 <= 1 is rejected."""
        with pytest.raises(ConfigError, match="k0 must exceed 1, got 0.5"):
            Thresholds(k0=0.5, k1=0.1)

    def test_k1_range(self):
        """Test k1 outside (0, 1) is rejected."""
        with pytest.raises(ConfigError, match="k1 must lie strictly between 0 and 1"):
            Thresholds(k0=3.0, k1=1.0)

    def test_point_prior(self):
        """Test point priors have zero spread."""
        prior = DesignPrior.point(0.3)

        assert prior.is_point
        assert not DesignPrior(0.3, 0.1).is_point

    def test_negative_sd(self):
        """Test a negative design prior sd is rejected."""
        with pytest.raises(ConfigError, match="must be non-negative"):
            DesignPrior(0.0, -0.1)


class TestZMoments:
    """Tests for z_moments function."""

    def test_canonical_covariance(self):
        """Test the canonical correlation sqrt(I1 / I2)."""
        moments = z_moments(build_schedule(UnitVariance(), [1, 4]), DesignPrior.point(0.5))

        np.testing.assert_allclose(moments.mean, [0.5, 1.0])
        np.testing.assert_allclose(moments.cov, [[1.0, 0.5], [0.5, 1.0]])

    def test_design_prior_spread(self):
        """Test the design prior adds tau^2 sqrt(I) sqrt(I)^T."""
        moments = z_moments(build_schedule(UnitVariance(), [1, 4]), DesignPrior(0.0, 0.1))

        np.testing.assert_allclose(moments.mean, [0.0, 0.0])
        np.testing.assert_allclose(moments.cov, [[1.01, 0.52], [0.52, 1.04]])


class TestSequentialDesign:
    """Tests for SequentialDesign validation."""

    def test_informed_t_needs_t_model(self):
        """Test the informed t prior requires the t-test model."""
        model = UnitVariance()
        with pytest.raises(DesignError, match="t-test information model"):
            SequentialDesign(
                build_schedule(model, [20]),
                Thresholds(6.0, 0.1),
                InformedT(),
                DesignPrior.point(0.0),
                model,
            )

    def test_arm_mismatch(self):
        """Test the schedule must have as many arms as the model."""
        with pytest.raises(DesignError, match="schedule has 1 arm"):
            SequentialDesign(
                build_schedule(UnitVariance(), [20]),
                Thresholds(6.0, 0.1),
                DirectionalDirectional(0.0, 1.0),
                DesignPrior.point(0.0),
                TwoSampleZ(),
            )

    def test_two_sided_cap(self):
        """Test two-sided priors are limited in their number of analyses."""
        model = UnitVariance()
        with pytest.raises(DesignError, match="8192 rectangles"):
            SequentialDesign(
                build_schedule(model, range(10, 140, 10)),
                Thresholds(3.0, 1 / 3),
                PointTwoSided(0.0, 0.5),
                DesignPrior.point(0.0),
                model,
            )

    def test_raised_cap(self, two_sided_design):
        """Test the cap can be raised explicitly."""
        schedule = build_schedule(UnitVariance(), range(10, 140, 10))
        design = SequentialDesign(
            schedule,
            two_sided_design.thresholds,
            two_sided_design.analysis_prior,
            two_sided_design.design_prior,
            two_sided_design.info_model,
            max_pair_analyses=13,
        )

        assert design.m == 13

    def test_with_design_prior(self, point_design):
        """Test replacing the design prior keeps everything else."""
        design = point_design.with_design_prior(DesignPrior.point(0.0))

        assert design.design_prior == DesignPrior.point(0.0)
        assert design.schedule == point_design.schedule


class TestIntervals:
    """Tests for interval set operations."""

    def test_complement(self):
        """Test gaps on the real line."""
        assert complement([(-1.0, 1.0)]) == ((-INF, -1.0), (1.0, INF))
        assert complement([]) == ((-INF, INF),)
        assert complement([(-INF, INF)]) == ()

    def test_intersect_and_difference(self):
        """Test intersections and differences of interval sets."""
        assert intersect([(-2.0, 2.0)], [(1.0, 3.0), (-5.0, -1.0)]) == ((-2.0, -1.0), (1.0, 2.0))
        assert difference([(-2.0, 2.0)], [(-1.0, 1.0)]) == ((-2.0, -1.0), (1.0, 2.0))


class TestStoppingRegions:
    """Tests for stopping_regions function."""

    def test_single_critical_value_regions(self, point_design):
        """Test monotone Bayes factors give one rectangle per stage and outcome."""
        regions = stopping_regions(point_design)

        assert regions.m == 3
        for j, stage in enumerate(regions.stages, start=1):
            assert len(stage.h1_rects) == len(stage.h0_rects) == 1
            assert stage.h1_rects[0].dim == j
        assert len(regions.continuation_rects) == 1

    def test_directional_regions(self):
        """Test a directional prior stops for H1 in the upper tail."""
        model = UnitVariance()
        design = SequentialDesign(
            build_schedule(model, [10, 20, 30]),
            Thresholds(6.0, 1 / 6),
            DirectionalDirectional(0.0, 1.0),
            DesignPrior.point(0.0),
            model,
        )

        regions = stopping_regions(design)

        for stage, crit in zip(regions.stages, critical_sets(design), strict=True):
            assert isinstance(crit.k1, Single)
            assert stage.h1_intervals == ((crit.k1.z_crit, INF),)
            assert stage.h0_intervals == ((-INF, crit.k0.z_crit),)
        last = regions.stages[-1].h1_rects[0]
        earlier = [s.continuation_intervals[0][1] for s in regions.stages[:2]]
        assert list(last.upper[:2]) == earlier

    def test_two_sided_doubling(self, two_sided_design):
        """Test two critical values double the rectangles at every analysis."""
        regions = stopping_regions(two_sided_design)

        first, second = regions.stages
        assert len(first.h1_intervals) == 2
        assert len(first.continuation_intervals) == 2
        assert len(second.h1_rects) == 4
        assert len(second.h0_rects) == 2
        assert len(regions.continuation_rects) == 4

    def test_unreachable_h0(self):
        """Test a threshold without critical values leaves no stopping set."""
        model = UnitVariance()
        design = SequentialDesign(
            build_schedule(model, [20, 120]),
            Thresholds(3.0, 1 / 3),
            PointTwoSided(0.0, 0.5),
            DesignPrior.point(0.0),
            model,
        )

        first = stopping_regions(design).stages[0]

        assert first.h0_stoppable is False
        assert first.h0_rects == ()
        assert first.h1_stoppable is True

    @pytest.mark.parametrize("fixture", ["point_design", "two_sided_design"])
    def test_regions_partition_sample_paths(self, fixture, request):
        """Test sampled z-paths fall in at most one region per stage and one region overall."""
        design = request.getfixturevalue(fixture)
        regions = stopping_regions(design)
        moments = z_moments(design.schedule, design.design_prior)
        paths = np.random.default_rng(3).multivariate_normal(moments.mean, moments.cov, 20_000)

        total = np.zeros(len(paths), dtype=int)
        for j, stage in enumerate(regions.stages, start=1):
            stops = stage.h1_rects + stage.h0_rects
            hits = sum(r.contains(paths[:, :j]).astype(int) for r in stops)
            assert np.all(hits <= 1)
            total += hits
        total += sum(r.contains(paths).astype(int) for r in regions.continuation_rects)

        assert np.all(total == 1)


class TestCharacteristics:
    """Tests for characteristics function."""

    def test_single_look_matches_normal_tails(self, point_design):
        """Test one analysis reduces to normal tail probabilities."""
        design = point_design.with_schedule(build_schedule(UnitVariance(), [10]))
        crit = critical_sets(design)[0]
        shift = 0.5 * math.sqrt(10)

        report = characteristics(design)

        assert report.final.cum_h1 == pytest.approx(stats.norm.sf(crit.k1.z_crit - shift))
        assert report.final.cum_h0 == pytest.approx(stats.norm.cdf(crit.k0.z_crit - shift))
        assert report.expected_n == (10.0,)
        assert report.sd_n == (0.0,)

    def test_partition(self, two_sided_design):
        """Test stopping and continuation probabilities add to one."""
        report = characteristics(two_sided_design, seed=3)

        final = report.final
        total = final.cum_h1 + final.cum_h0 + report.continuation_prob
        assert total == pytest.approx(1.0, abs=1e-3)
        assert not any("miss 1" in w for w in report.warnings)

    def test_cumulative_probabilities(self, point_design, fast_mvn):
        """Test cumulative probabilities add up the stagewise ones."""
        report = characteristics(point_design, fast_mvn)

        assert [s.stage for s in report.stages] == [1, 2, 3]
        assert report.stages[-1].cum_h1 == pytest.approx(sum(s.h1 for s in report.stages))
        assert all(a.cum_h1 <= b.cum_h1 + 1e-12 for a, b in zip(report.stages, report.stages[1:]))
        assert 10.0 <= report.expected_n[0] <= 30.0
        assert report.cov_n[0] == pytest.approx(report.sd_n[0] / report.expected_n[0])

    def test_universal_bound(self, point_design):
        """Test evidence for a false alternative stays below k1 under the null."""
        report = characteristics(point_design.with_design_prior(DesignPrior.point(0.0)))

        assert report.final.cum_h1 <= point_design.thresholds.k1

    @pytest.mark.slow
    def test_universal_bound_random_designs(self, fast_mvn):
        """Test random point-point designs under the null stay below k1 evidence for H1."""
        rng = np.random.default_rng(50)
        model = UnitVariance()
        for _ in range(50):
            sizes = np.cumsum(rng.integers(5, 40, size=int(rng.integers(1, 6))))
            mu = float(rng.uniform(0.1, 1.0) * rng.choice([-1.0, 1.0]))
            k1 = math.exp(rng.uniform(math.log(1 / 30), math.log(1 / 3)))
            k0 = math.exp(rng.uniform(math.log(3.0), math.log(30.0)))
            design = SequentialDesign(
                build_schedule(model, [float(n) for n in sizes]),
                Thresholds(k0, k1),
                PointPoint(mu),
                DesignPrior.point(0.0),
                model,
            )

            final = characteristics(design, fast_mvn).final

            assert final.cum_h1 <= k1 + 3.0 * final.err_h1, (sizes, mu, k1, k0)

    def test_single_pass_matches_rectangles(self, point_design):
        """Test stagewise probabilities against integrals over the stopping rectangles."""
        regions = stopping_regions(point_design)
        moments = z_moments(point_design.schedule, point_design.design_prior)

        report = characteristics(point_design)

        for stage, probs in zip(regions.stages, report.stages, strict=True):
            assert probs.h1 == pytest.approx(mvn_prob_union(stage.h1_rects, moments).prob, abs=1e-3)
            assert probs.h0 == pytest.approx(mvn_prob_union(stage.h0_rects, moments).prob, abs=1e-3)

    def test_same_seed_same_report(self, two_sided_design, fast_mvn):
        """Test equal seeds give identical reports."""
        first = characteristics(two_sided_design, fast_mvn, seed=11)
        second = characteristics(two_sided_design, fast_mvn, seed=11)

        assert first == second

    def test_two_arm_totals(self, fast_mvn):
        """Test two-arm designs report per-arm moments and a total."""
        model = TwoSampleZ()
        design = SequentialDesign(
            build_schedule(model, [20, 40]),
            Thresholds(10.0, 0.1),
            DirectionalDirectional(0.0, 1.0),
            DesignPrior(0.3, 0.1),
            model,
        )

        report = characteristics(design, fast_mvn)

        assert len(report.expected_n) == 2
        assert report.expected_n[0] == pytest.approx(report.expected_n[1])
        assert report.expected_total_n == pytest.approx(2 * report.expected_n[0])

    def test_warnings(self, configs_dir, fast_mvn):
        """Test small effective samples and unreachable thresholds are reported."""
        _, design = _load(configs_dir, "two-sided-m4")

        report = characteristics(design, fast_mvn)

        assert "evidence for H0 cannot be reached at stage(s) 1" in report.warnings

    def test_t_test_small_sample_warning(self, configs_dir, fast_mvn):
        """Test effective sample sizes below 30 are flagged."""
        _, design = _load(configs_dir, "appendix-a")

        report = characteristics(design, fast_mvn)

        assert report.warnings[0].startswith("effective sample size below 30 at stage(s) 1, 2")

    def test_evidence_probabilities(self, point_design, fast_mvn):
        """Test correct and misleading evidence follow the true hypothesis."""
        report = characteristics(point_design, fast_mvn)

        under_h1 = evidence_probabilities(report, Hypothesis.H1)
        under_h0 = evidence_probabilities(report, Hypothesis.H0)

        assert under_h1.correct == report.final.cum_h1
        assert under_h1.misleading == report.final.cum_h0
        assert under_h0.correct == report.final.cum_h0
        assert under_h0.inconclusive == report.final.cum_inconclusive


@pytest.mark.slow
class TestReferenceDesigns:
    """Tests reproducing published operating characteristics."""

    def test_appendix_design(self, configs_dir):
        """Test the five-look two-sample t design report."""
        config, design = _load(configs_dir, "appendix-a")

        report = characteristics(design, config.mvn, config.seed)

        expected_h1 = (0.1302, 0.3500, 0.5497, 0.7017, 0.8068)
        expected_h0 = (0.0041, 0.0070, 0.0082, 0.0087, 0.0088)
        for stage, h1, h0 in zip(report.stages, expected_h1, expected_h0, strict=True):
            assert stage.cum_h1 == pytest.approx(h1, abs=0.0015)
            assert stage.cum_h0 == pytest.approx(h0, abs=0.0015)
        assert report.expected_n[0] == pytest.approx(64.8083, abs=0.05)
        assert report.sd_n[0] == pytest.approx(28.3783, abs=0.1)

    @pytest.mark.parametrize(
        ("name", "pr_h1", "pr_h0", "expected_n"),
        [("schoenbrodt", 0.703, 0.018, 69.4), ("schoenbrodt-null", 0.005, 0.713, 65.7)],
    )
    def test_sixty_one_looks(self, configs_dir, name, pr_h1, pr_h0, expected_n):
        """Test a design with an analysis after every participant pair."""
        config, design = _load(configs_dir, name)

        report = characteristics(design, config.mvn, config.seed)

        assert design.m == 61
        assert report.final.cum_h1 == pytest.approx(pr_h1, abs=0.005)
        assert report.final.cum_h0 == pytest.approx(pr_h0, abs=0.005)
        assert report.expected_n[0] == pytest.approx(expected_n, abs=0.5)

    @pytest.mark.parametrize(("name", "truth"), [("low-pv", "h1"), ("low-pv-null", "h0")])
    def test_proportions_trial(self, configs_dir, name, truth):
        """Test the three-look proportions trial stays below 90 percent power."""
        config, design = _load(configs_dir, name)

        report = characteristics(design, config.mvn, config.seed)

        correct = evidence_probabilities(report, Hypothesis(truth)).correct
        assert 0.80 < correct < 0.90


@pytest.mark.slow
class TestFindMaxN:
    """Tests for the maximum sample size search."""

    @pytest.mark.parametrize(("name", "expected"), [("low-pv-null", 87.0), ("low-pv", 102.0)])
    def test_proportions_trial(self, configs_dir, name, expected):
        """Test the smallest per-group size reaching 90 percent evidence."""
        config, design = _load(configs_dir, name)
        search = config.search

        schedule = find_max_n(
            design,
            search.target,
            search.hypothesis,
            (search.n_lo, search.n_hi),
            config.mvn,
            config.seed,
        )

        assert schedule.m == 3
        assert schedule.stages[-1].n_report == (expected, expected)
        assert schedule.stages[0].n_report == (expected / 3, expected / 3)


class TestFindMaxNErrors:
    """Tests for find_max_n argument handling."""

    def test_invalid_target(self, point_design):
        """Test targets outside (0, 1) are rejected."""
        with pytest.raises(ConfigError, match="strictly between 0 and 1"):
            find_max_n(point_design, 1.5, Hypothesis.H1, (10, 100))

    def test_invalid_bracket(self, point_design):
        """Test an inverted bracket is rejected."""
        with pytest.raises(ConfigError, match="0 < n_lo < n_hi"):
            find_max_n(point_design, 0.8, Hypothesis.H1, (100, 10))

    def test_lower_end_sufficient(self, point_design, fast_mvn):
        """Test the lower end is returned when it already meets the target."""
        schedule = find_max_n(point_design, 0.05, Hypothesis.H1, (30, 300), fast_mvn)

        assert [s.n_report for s in schedule.stages] == [(10.0,), (20.0,), (30.0,)]

    def test_unreachable(self, configs_dir, fast_mvn):
        """Test a target beyond the upper end raises TargetUnreachableError."""
        _, design = _load(configs_dir, "low-pv")

        with pytest.raises(TargetUnreachableError, match="unreachable up to n=120") as info:
            find_max_n(design, 0.999, Hypothesis.H1, (30, 120), fast_mvn)
        assert info.value.target == 0.999
        assert info.value.achieved < 0.999

    def test_target_at_upper_end(self, point_design, fast_mvn):
        """Test a target equal to the probability reached at n_hi returns n_hi."""
        high = scaled_schedule(point_design.info_model, 99, 3)
        target = characteristics(point_design.with_schedule(high), fast_mvn).final.cum_h1

        schedule = find_max_n(point_design, target, Hypothesis.H1, (10, 99), fast_mvn)

        assert [s.n_report for s in schedule.stages] == [(33.0,), (66.0,), (99.0,)]

    def test_never_exceeds_upper_end(self, point_design, fast_mvn):
        """Test the search stays within the bracket when n_hi is not a multiple of m."""
        high = scaled_schedule(point_design.info_model, 100, 3)
        target = characteristics(point_design.with_schedule(high), fast_mvn).final.cum_h1

        schedule = find_max_n(point_design, target, Hypothesis.H1, (10, 100), fast_mvn)

        achieved = characteristics(point_design.with_schedule(schedule), fast_mvn).final.cum_h1
        assert schedule.stages[-1].n_report[0] <= 100.0
        assert achieved >= target


class TestSweep:
    """Tests for sweep function."""

    def test_grid(self, point_design, fast_mvn):
        """Test every combination of size, looks and prior is evaluated."""
        priors = [
            LabelledPrior("effect", DesignPrior.point(0.5), Hypothesis.H1),
            LabelledPrior("null", DesignPrior.point(0.0), Hypothesis.H0),
        ]

        points = sweep(point_design, [20, 40], [1, 2], priors, fast_mvn)

        assert [(p.n_max, p.m, p.label) for p in points] == [
            (20.0, 1, "effect"),
            (20.0, 1, "null"),
            (20.0, 2, "effect"),
            (20.0, 2, "null"),
            (40.0, 1, "effect"),
            (40.0, 1, "null"),
            (40.0, 2, "effect"),
            (40.0, 2, "null"),
        ]
        assert points[-1].report.final.n_report == (40.0,)

    def test_collapsed_schedule_skipped(self, point_design, fast_mvn):
        """Test schedules that repeat a size after rounding are skipped."""
        priors = [LabelledPrior("effect", DesignPrior.point(0.5), Hypothesis.H1)]

        points = sweep(point_design, [2, 30], [5], priors, fast_mvn)

        assert [p.n_max for p in points] == [30.0]

    def test_empty_grid(self, point_design):
        """Test an empty grid raises ConfigError."""
        with pytest.raises(ConfigError, match="sweep grid is empty"):
            sweep(point_design, [], [1], [])

    @pytest.mark.slow
    def test_proportions_sweep(self, configs_dir):
        """Test power crosses 90 percent between 100 and 102 per group."""
        config, design = _load(configs_dir, "low-pv")
        priors = config.sweep.design_priors

        points = sweep(design, [100, 102], [3], priors, config.mvn, config.seed)

        power = {
            p.n_max: evidence_probabilities(p.report, p.truth).correct
            for p in points
            if p.truth is Hypothesis.H1
        }
        assert power[100.0] < 0.90 <= power[102.0]
        for p in points:
            if p.truth is Hypothesis.H0:
                assert evidence_probabilities(p.report, p.truth).misleading <= 0.05

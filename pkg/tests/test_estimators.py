import math
from dataclasses import replace

import numpy as np
import pytest

from core.distributions import WeightDistribution, cramer_rate, field_seed
from core.estimators import (
    Corridor,
    ReplicatePool,
    default_tilt,
    estimate_endpoint_tail,
    estimate_left_tail,
    estimate_midpoint_tail,
    estimate_shape,
    estimate_tail,
    estimate_tail_tilted,
    fekete_curve,
    geodesic_tilt,
    left_tail_scan,
    midpoint_rate_identity,
    verify_convexity,
    verify_monotone_in_t,
)
from core.estimators.kernels import endpoint_batch, midpoint_batch
from core.estimators.properties import ConvexityReport, IdentityReport, grid_triples, left_tail_tilt
from core.estimators.results import RateEstimate, SamplingMethod
from core.estimators.sampling import direct_plan, seed_key
from core.estimators.tail import sample_passage_values
from core.exceptions import (
    CorridorMismatchError,
    ParityError,
    RangeError,
    TiltDomainError,
)
from core.lpp import last_passage, point_to_line, sample_field, summarize_geodesic
from core.oracle import corner_passage_tail, unit_square_passage_cdf


def within(estimate, exact, sigmas=4.0):
    return abs(estimate.p_hat - exact) <= sigmas * estimate.std_err + 1e-12


def fitted_slope(estimates):
    """-log p̂ 对 n 的最小二乘斜率"""
    ns = [estimate.n for estimate in estimates]
    return float(np.polyfit(ns, [-math.log(estimate.p_hat) for estimate in estimates], 1)[0])


class TestReplicatePool:
    def test_chunks(self):
        pool = ReplicatePool(workers=2, chunk_size=4, progress=False)
        assert pool.chunks(10) == [(0, 4), (4, 8), (8, 10)]

    def test_run_concatenates_in_order(self, threaded_pool):
        (out,) = threaded_pool.run(lambda start, stop: (np.arange(start, stop),), 1000)
        assert np.array_equal(out, np.arange(1000))


class TestKernels:
    def test_passage_matches_field(self, exp1, pool):
        target = (5, 3)
        values, _ = sample_passage_values(exp1, target, direct_plan(exp1, *target), 20, 9, pool)
        for r in range(20):
            field = sample_field(exp1, 5, 3, field_seed(9, r))
            assert values[r] == last_passage(field, (0, 0), target).value

    def test_midpoint_and_endpoint_match_field(self, gamma21):
        n, count, seed = 6, 30, 77
        plan = direct_plan(gamma21, n, n)
        mids = np.empty(count, dtype=np.int64)
        disps = np.empty(count, dtype=np.int64)
        sums = np.empty(count)
        ties = np.empty(count, dtype=np.bool_)
        midpoint_batch(gamma21.code, gamma21.shape, seed_key(seed), 0, count, n, plan.rates, plan.mask,
                       mids, disps, sums, ties)
        ends = np.empty(count, dtype=np.int64)
        values = np.empty(count)
        endpoint_batch(gamma21.code, gamma21.shape, seed_key(seed), 0, count, n, plan.rates, plan.mask,
                       ends, values, sums)
        for r in range(count):
            field = sample_field(gamma21, n, n, field_seed(seed, r))
            summary = summarize_geodesic(last_passage(field, (0, 0), (n, n)), n, field)
            assert mids[r] == summary.midpoint[0]
            assert disps[r] == summary.max_displacement
            assert ends[r] == summary.endpoint_ptl[0]
            assert values[r] == pytest.approx(point_to_line(field, n).value)
        assert not ties.any()


class TestTail:
    def test_zero_level_is_certain(self, exp1, pool):
        estimate = estimate_tail(exp1, 0.0, 0.0, 6, 200, 1, pool)
        assert estimate.p_hat == 1.0
        assert estimate.ci_high == 1.0

    @pytest.mark.slow
    def test_corner_direct_matches_exact(self, exp1, pool):
        estimate = estimate_tail(exp1, 0.5, 2.0, 5, 20_000, 3, pool)
        assert within(estimate, corner_passage_tail(exp1, 5, 2.0))
        assert estimate.ci_low <= estimate.p_hat <= estimate.ci_high

    def test_worker_count_does_not_change_results(self, exp1, pool, threaded_pool):
        single = estimate_tail(exp1, 0.1, 2.2, 12, 3000, 5, pool)
        threaded = estimate_tail(exp1, 0.1, 2.2, 12, 3000, 5, threaded_pool)
        assert single.to_dict() == threaded.to_dict()

    def test_negative_direction_mirrors_corner(self, exp1, pool):
        estimate = estimate_tail(exp1, -0.5, 1.5, 4, 5000, 12, pool)
        assert within(estimate, corner_passage_tail(exp1, 4, 1.5))

    def test_zero_tilt_equals_direct(self, exp1, pool):
        direct = estimate_tail(exp1, 0.25, 2.0, 8, 2000, 11, pool)
        corridor = Corridor.through(0.25, 8, to_corner=False)
        tilted = estimate_tail_tilted(exp1, 0.25, 2.0, 8, 2000, 0.0, corridor, 11, pool)
        assert tilted.p_hat == pytest.approx(direct.p_hat, rel=1e-12)
        assert tilted.method.is_tilted

    @pytest.mark.slow
    def test_tilted_corner_matches_exact(self, exp1, pool):
        corridor = Corridor.through(0.5, 6, halfwidth=0, to_corner=False)
        estimate = estimate_tail_tilted(exp1, 0.5, 2.5, 6, 20_000, 0.5, corridor, 21, pool)
        exact = corner_passage_tail(exp1, 6, 2.5)
        assert within(estimate, exact)
        assert estimate.std_err < exact / 5

    @pytest.mark.slow
    def test_tilted_defaults(self, exp1, pool):
        estimate = estimate_tail_tilted(exp1, 0.5, 2.5, 6, 20_000, None, None, 22, pool)
        assert estimate.method.tilt == pytest.approx(0.6)
        assert within(estimate, corner_passage_tail(exp1, 6, 2.5))

    @pytest.mark.slow
    @pytest.mark.parametrize("r", [2.0, 3.0])
    def test_tilted_corner_bound_at_larger_scale(self, exp1, pool, r):
        estimate = estimate_tail_tilted(exp1, 0.5, r, 20, 100_000, None, None, 41, pool)
        assert within(estimate, corner_passage_tail(exp1, 20, r), sigmas=3.0)
        assert estimate.ci_low <= math.exp(-20 * cramer_rate(exp1, r))

    def test_tilted_interval_narrower_than_direct(self, exp1, pool):
        direct = estimate_tail(exp1, 0.5, 3.0, 10, 100_000, 43, pool)
        corridor = Corridor.through(0.5, 10, halfwidth=0, to_corner=False)
        tilted = estimate_tail_tilted(exp1, 0.5, 3.0, 10, 100_000, 2.0 / 3.0, corridor, 43, pool)
        assert tilted.ci_high - tilted.ci_low < direct.ci_high - direct.ci_low

    def test_tilted_rejects_bad_inputs(self, exp1, pool):
        with pytest.raises(CorridorMismatchError):
            estimate_tail_tilted(exp1, 0.25, 2.0, 8, 100, 0.3, Corridor.through(0.25, 10), 1, pool)
        with pytest.raises(TiltDomainError):
            estimate_tail_tilted(exp1, 0.25, 2.0, 8, 100, 1.0, None, 1, pool)

    def test_argument_errors(self, exp1, pool):
        with pytest.raises(RangeError):
            estimate_tail(exp1, 0.0, -1.0, 4, 10, 1, pool)
        with pytest.raises(RangeError):
            estimate_tail(exp1, 0.6, 1.0, 4, 10, 1, pool)
        with pytest.raises(RangeError):
            estimate_tail(exp1, 0.0, 1.0, 4, 0, 1, pool)

    def test_fekete_curve(self, exp1, pool):
        curve = fekete_curve(exp1, 0.5, 2.0, [2, 4, 6], 5000, 8, method="tilted", halfwidth=0, pool=pool)
        assert [estimate.n for estimate in curve] == [2, 4, 6]
        assert all(estimate.method.is_tilted for estimate in curve)
        for estimate in curve:
            assert estimate.fekete_bound >= cramer_rate(exp1, 2.0) - 4 * estimate.fekete_std_err
        with pytest.raises(RangeError):
            fekete_curve(exp1, 0.5, 2.0, [4, 2], 10, 8, pool=pool)


class TestShape:
    def test_corner_mean(self, exp1, pool):
        estimate = estimate_shape(exp1, 0.5, 10, 4000, 2, pool)
        assert abs(estimate.mean - 1.0) <= 5 * estimate.std_err

    def test_diagonal_below_limit(self, exp1, pool):
        estimate = estimate_shape(exp1, 0.0, 20, 500, 2, pool)
        assert 1.0 < estimate.mean < 2.0

    @pytest.mark.slow
    def test_diagonal_at_large_scale(self, exp1, pool):
        estimate = estimate_shape(exp1, 0.0, 1000, 200, 47, pool)
        assert 1.85 <= estimate.mean <= 2.0
        smaller = estimate_shape(exp1, 0.0, 200, 200, 47, pool)
        larger = estimate_shape(exp1, 0.0, 400, 200, 47, pool)
        assert smaller.mean <= larger.mean + 3 * math.hypot(smaller.std_err, larger.std_err)


class TestGeodesicTails:
    def test_corner_midpoint_is_point_event(self, exp1, pool):
        estimate = estimate_midpoint_tail(exp1, 0.5, 4, 3000, 4, pool=pool)
        assert estimate.p_hat == estimate.p_point

    def test_nested_thresholds(self, exp1, pool):
        probabilities = [estimate_midpoint_tail(exp1, t, 8, 2000, 6, pool=pool).p_hat
                         for t in (0.125, 0.25, 0.5)]
        assert probabilities[0] >= probabilities[1] >= probabilities[2]
        assert probabilities[0] > 0

    @pytest.mark.slow
    def test_tilted_corner_midpoint_agrees_with_direct(self, exp1, pool):
        direct = estimate_midpoint_tail(exp1, 0.5, 4, 20_000, 14, pool=pool)
        corridor = Corridor.through(0.5, 4, halfwidth=0)
        tilted = estimate_midpoint_tail(exp1, 0.5, 4, 20_000, 15, method="tilted", tilt=0.3,
                                        corridor=corridor, pool=pool)
        assert abs(direct.p_hat - tilted.p_hat) <= 4 * math.hypot(direct.std_err, tilted.std_err)

    @pytest.mark.slow
    def test_corner_point_slopes(self, exp1, pool):
        ns = [6, 8, 10, 12, 14]
        midpoint = [estimate_midpoint_tail(exp1, 0.5, n, 1_000_000, 51, pool=pool) for n in ns]
        endpoint = [estimate_endpoint_tail(exp1, 0.5, n, 1_000_000, 51, pool=pool) for n in ns]
        mid_slope = fitted_slope(midpoint)
        assert 0.45 <= mid_slope <= 0.80
        assert fitted_slope(endpoint) == pytest.approx(mid_slope / 2.0, rel=0.3)

    @pytest.mark.slow
    def test_endpoint_decreasing_in_n(self, exp1, pool):
        estimates = [estimate_endpoint_tail(exp1, 0.25, n, 100_000, 53, pool=pool) for n in (10, 20, 30)]
        for smaller, larger in zip(estimates[:-1], estimates[1:]):
            assert larger.p_hat <= smaller.p_hat + 2 * math.hypot(smaller.std_err, larger.std_err)

    @pytest.mark.slow
    def test_default_tilt_not_worse_than_direct(self, exp1, pool):
        direct = estimate_midpoint_tail(exp1, 0.25, 40, 50_000, 55, pool=pool)
        tilted = estimate_midpoint_tail(exp1, 0.25, 40, 50_000, 55, method="tilted", pool=pool)
        assert tilted.std_err <= 1.25 * direct.std_err
        assert abs(direct.p_hat - tilted.p_hat) <= 4 * math.hypot(direct.std_err, tilted.std_err)

    def test_displacement_dominates_midpoint(self, exp1, pool):
        estimate = estimate_midpoint_tail(exp1, 0.25, 8, 2000, 6, pool=pool)
        assert estimate.p_displacement >= estimate.p_hat
        assert estimate.p_hat >= estimate.p_point

    def test_endpoint(self, exp1, pool):
        direct = estimate_endpoint_tail(exp1, 0.5, 6, 2000, 7, pool=pool)
        assert direct.p_hat == direct.p_point
        tilted = estimate_endpoint_tail(exp1, 0.25, 6, 2000, 7, method="tilted", pool=pool)
        assert tilted.method.is_tilted
        assert 0.0 <= tilted.p_hat <= 1.0

    def test_worker_invariance(self, exp1, pool, threaded_pool):
        single = estimate_midpoint_tail(exp1, 0.25, 8, 1000, 9, method="tilted", pool=pool)
        threaded = estimate_midpoint_tail(exp1, 0.25, 8, 1000, 9, method="tilted", pool=threaded_pool)
        assert single.to_dict() == threaded.to_dict()

    def test_argument_errors(self, exp1, pool):
        with pytest.raises(ParityError):
            estimate_midpoint_tail(exp1, 0.25, 7, 10, 1, pool=pool)
        with pytest.raises(RangeError):
            estimate_midpoint_tail(exp1, 0.0, 8, 10, 1, pool=pool)
        with pytest.raises(RangeError):
            estimate_endpoint_tail(exp1, 0.25, 8, 10, 1, method="other", pool=pool)


class TestTilts:
    def test_default_tilt(self, exp1, gamma21):
        assert default_tilt(exp1, 0.5, 3.0) == pytest.approx(2.0 / 3.0, abs=1e-9)
        assert default_tilt(exp1, 0.0, 1.5) == 0.0
        assert default_tilt(exp1, 0.0, 3.0) == pytest.approx(1.0 / 3.0, abs=1e-9)
        assert default_tilt(gamma21, 0.5, 2.0) == 0.0

    def test_left_tail_tilt(self, exp1):
        assert left_tail_tilt(exp1, 1.0, 2.0) == pytest.approx(-1.0, abs=1e-9)
        assert left_tail_tilt(exp1, 0.0, 2.0) == 0.0
        with pytest.raises(RangeError):
            left_tail_tilt(exp1, 2.0, 2.0)

    def test_geodesic_tilt(self, exp1):
        # Δ = legs·n·(μ0-μ_t)，λ = Δ/(2mσ²)，上限 default_tilt(exp1, 0.5, 2) = 1/2
        assert geodesic_tilt(exp1, 0.5, 4, 2.0, 16, legs=2) == pytest.approx(0.25)
        assert geodesic_tilt(exp1, 0.5, 4, 2.0, 16, legs=1) == pytest.approx(0.125)
        assert geodesic_tilt(exp1, 0.5, 4, 2.0, 8, legs=2) == pytest.approx(0.5)
        assert geodesic_tilt(exp1, 0.5, 4, 2.0, 4, legs=2) == pytest.approx(0.5)
        assert geodesic_tilt(exp1, 0.0, 10, 2.0, 100, legs=2) == 0.0
        assert geodesic_tilt(exp1, 0.5, 4, 2.0, 0, legs=2) == 0.0

    def test_geodesic_tilt_is_mild_on_wide_corridors(self, exp1):
        sites = int(np.count_nonzero(Corridor.through(0.25, 40).tilt_mask(40, 40)))
        lam = geodesic_tilt(exp1, 0.25, 40, 2.0, sites, legs=2)
        assert 0.0 < lam < 0.01
        assert lam < default_tilt(exp1, 0.25, 2.0)


class TestLeftTail:
    @pytest.mark.slow
    def test_unit_square(self, exp1, pool):
        estimate = estimate_left_tail(exp1, 1.0, 2, 20_000, 13, pool=pool)
        assert estimate.r == 1.0
        assert estimate.method.is_tilted
        assert within(estimate, unit_square_passage_cdf(exp1, 2.0))

    @pytest.mark.slow
    def test_untilted(self, exp1, pool):
        estimate = estimate_left_tail(exp1, 1.0, 2, 20_000, 13, tilt=0.0, pool=pool)
        assert estimate.method.name == "direct"
        assert within(estimate, unit_square_passage_cdf(exp1, 2.0))

    def test_scan(self, exp1, pool):
        report = left_tail_scan(exp1, 1.0, [2, 4, 6], 4000, 3, pool=pool)
        assert report.mu0 == 2.0
        assert [estimate.n for estimate in report.estimates] == [2, 4, 6]
        assert len(report.rates) == 3
        if report.zero_hit:
            assert not report.superexponential

    def test_scan_passes_tilt(self, exp1, pool):
        report = left_tail_scan(exp1, 1.0, [2, 4], 500, 3, tilt=0.0, pool=pool)
        assert all(estimate.method.name == "direct" for estimate in report.estimates)

    @pytest.mark.slow
    def test_superexponential_signature(self, exp1, pool):
        report = left_tail_scan(exp1, 1.0, [6, 8, 10], 200_000, 61, tilt=0.0, pool=pool)
        assert report.zero_hit == []
        assert report.superexponential

    @pytest.mark.slow
    def test_small_scales_tilted_match_direct(self, exp1, pool):
        tilted = left_tail_scan(exp1, 1.0, [4, 6, 8], 200_000, 63, pool=pool)
        direct = left_tail_scan(exp1, 1.0, [4, 6, 8], 200_000, 63, tilt=0.0, pool=pool)
        for down, plain in zip(tilted.estimates, direct.estimates):
            assert down.method.is_tilted
            assert abs(down.p_hat - plain.p_hat) <= 4 * math.hypot(down.std_err, plain.std_err)
        # n=4 到 n=6 之间 -log p̂/n 还没有显著上升
        first, second = direct.estimates[:2]
        tolerance = 4 * math.hypot(first.fekete_std_err, second.fekete_std_err)
        assert second.fekete_bound - first.fekete_bound < tolerance


class TestMonotonicity:
    def test_rates_increase_in_t(self, exp1, pool):
        report = verify_monotone_in_t(exp1, 2.0, 8, [0.0, 0.25, 0.5], 4000, 17, pool=pool)
        assert report.excluded == []
        assert report.passed
        rates = [estimate.fekete_bound for estimate in report.estimates]
        assert rates[0] < rates[2]

    def test_argument_errors(self, exp1, pool):
        with pytest.raises(RangeError):
            verify_monotone_in_t(exp1, 2.0, 8, [0.25, 0.0], 10, 1, pool=pool)
        with pytest.raises(RangeError):
            verify_monotone_in_t(exp1, 2.0, 8, [0.0, 0.75], 10, 1, pool=pool)

    @pytest.mark.slow
    def test_no_decrease_at_larger_scale(self, exp1, pool):
        report = verify_monotone_in_t(exp1, 2.2, 30, [0.0, 0.1, 0.2, 0.3, 0.4], 100_000, 71, pool=pool)
        assert report.passed


class TestConvexity:
    @staticmethod
    def report(rate, t_list=(0.0, 0.25, 0.5), r_list=(1.0, 2.0, 3.0), n=10):
        estimates = {}
        for t in t_list:
            for r in r_list:
                p_hat = math.exp(-n * rate(t, r))
                estimates[(t, r)] = RateEstimate(t=t, r=r, n=n, n_samples=1000, hits=10.0, p_hat=p_hat,
                                                 ci_low=p_hat / 2, ci_high=min(1.0, 2 * p_hat),
                                                 std_err=p_hat / 100)
        return ConvexityReport(n=n, t_list=list(t_list), r_list=list(r_list), estimates=estimates)

    @staticmethod
    def bowl(t, r):
        return t * t + (r - 1.0) ** 2 / 4

    def test_grid_triples(self):
        assert len(list(grid_triples([0.0, 0.25, 0.5], [1.0, 2.0, 3.0]))) == 8
        # 不等距时对角线三点不共线
        assert len(list(grid_triples([0.0, 0.1, 0.5], [1.0, 2.0, 3.0]))) == 6
        for a, b, c, w in grid_triples([0.0, 0.1, 0.5], [1.0, 2.0, 3.0]):
            assert b[0] == pytest.approx(w * a[0] + (1 - w) * c[0])
            assert b[1] == pytest.approx(w * a[1] + (1 - w) * c[1])

    def test_convex_grid_passes(self):
        report = self.report(self.bowl).check()
        assert report.passed
        assert report.excluded == []

    def test_bump_is_flagged_along_every_line(self):
        report = self.report(lambda t, r: self.bowl(t, r) + (0.5 if (t, r) == (0.25, 2.0) else 0.0)).check()
        assert not report.passed
        assert len(report.violations) == 4
        assert {middle for _, middle, _ in report.violations} == {(0.25, 2.0)}

    def test_zero_hit_cells_are_excluded(self):
        report = self.report(lambda t, r: self.bowl(t, r) + (0.5 if (t, r) == (0.25, 2.0) else 0.0))
        report.estimates[(0.25, 2.0)] = replace(report.estimates[(0.25, 2.0)], hits=0.0, p_hat=0.0)
        report.check()
        assert report.excluded == [(0.25, 2.0)]
        assert report.passed

    def test_corner_rates_convex_in_r(self, exp1, pool):
        report = verify_convexity(exp1, 8, [0.5], [1.5, 2.0, 2.5], 20_000, 73, pool=pool)
        assert report.excluded == []
        assert report.passed
        assert [estimate.r for estimate in report.rows] == [1.5, 2.0, 2.5]

    def test_argument_errors(self, exp1, pool):
        with pytest.raises(RangeError):
            verify_convexity(exp1, 8, [0.5], [2.0, 1.5], 10, 1, pool=pool)
        with pytest.raises(RangeError):
            verify_convexity(exp1, 8, [0.0, 0.75], [1.5, 2.0], 10, 1, pool=pool)


class TestIdentity:
    @staticmethod
    def rate_estimate(n, p_hat, hits=10.0):
        return RateEstimate(t=0.5, r=None, n=n, n_samples=1000, hits=hits, p_hat=p_hat,
                            ci_low=p_hat / 2, ci_high=min(1.0, p_hat * 2), std_err=p_hat / 10,
                            method=SamplingMethod.tilted(0.5, None))

    def test_report_properties(self):
        report = IdentityReport(t=0.5, n=10, mu0=2.0, midpoint=self.rate_estimate(10, math.exp(-6.0)),
                                passage=self.rate_estimate(10, math.exp(-3.0)))
        assert report.a == pytest.approx(0.3)
        assert report.b == pytest.approx(0.3)
        assert report.relative_gap == pytest.approx(0.0, abs=1e-12)
        low, high = report.a_interval
        assert low < report.a < high

    def test_zero_hit_gap_is_infinite(self):
        report = IdentityReport(t=0.5, n=10, mu0=2.0, midpoint=self.rate_estimate(10, 0.0, hits=0.0),
                                passage=self.rate_estimate(10, 0.01))
        assert math.isinf(report.a)
        assert math.isinf(report.relative_gap)

    def test_corner_run(self, exp1, pool):
        report = midpoint_rate_identity(exp1, 0.5, 4, 2000, 31, pool=pool)
        assert report.mu0 == 2.0
        assert report.closed_form == pytest.approx(1.0 - math.log(2.0))
        assert math.isfinite(report.b)

    def test_argument_errors(self, exp1, gamma21, pool):
        with pytest.raises(RangeError):
            midpoint_rate_identity(exp1, 0.0, 4, 10, 1, pool=pool)
        with pytest.raises(RangeError):
            midpoint_rate_identity(gamma21, 0.5, 4, 10, 1, mu0=1.5, pool=pool)
        with pytest.raises(RangeError):
            midpoint_rate_identity(WeightDistribution.exponential(), 0.6, 4, 10, 1, pool=pool)

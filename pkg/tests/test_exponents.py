import math
import random

import pytest

from fracjl.criticality import (
    Label,
    ProblemParams,
    classify,
    jl_threshold,
    jl_ratio,
    margin_at_infinity,
    margin_at_infinity_ds,
    reduced_from_x,
    reduced_sup,
    sobolev_exponent,
)
from fracjl.exponents import (
    classical_jl_exponent,
    classical_jl_exponent_weighted,
    critical_set,
    joseph_lundgren_exponent,
    min_supercritical_dimension,
    order_threshold,
    order_thresholds_negative_weight,
    threshold_report,
    turning_order,
    weight_bound,
    weight_threshold_slope,
    weight_thresholds,
)
from fracjl.specfun import DomainError

# Bisection regression values for the zero-weight order thresholds.
S_8_REFERENCE = 0.2820667181547721
S_9_REFERENCE = 0.6323761060830350


class TestJosephLundgrenExponent:
    def test_infinite_in_low_dimensions(self):
        assert math.isinf(joseph_lundgren_exponent(5, 0.5, 0.0))

    def test_infinite_above_order_threshold(self):
        s8 = order_threshold(8)
        assert math.isinf(joseph_lundgren_exponent(8, s8 + 0.5 * (1 - s8), 0.0))

    def test_classical_limit(self):
        p = joseph_lundgren_exponent(11, 1.0 - 1e-7, 0.0)
        assert p == pytest.approx(classical_jl_exponent(11), rel=1e-4)

    def test_rejects_positive_weight(self):
        with pytest.raises(DomainError):
            joseph_lundgren_exponent(8, 0.1, 0.5)

    def test_trichotomy(self):
        s8 = order_threshold(8)
        s = 0.8 * s8
        p_jl = joseph_lundgren_exponent(8, s, 0.0)
        assert math.isfinite(p_jl)
        assert classify(ProblemParams(8, s, 0.0, p_jl)).label is Label.CRITICAL
        for factor, expected in ((0.5, Label.SUBCRITICAL), (2.0, Label.SUPERCRITICAL)):
            p = max(p_jl * factor, sobolev_exponent(8, s, 0.0) * 1.001)
            assert classify(ProblemParams(8, s, 0.0, p)).label is expected

    def test_unique_crossing_for_nonpositive_weight(self):
        rng = random.Random(21)
        found = 0
        while found < 200:
            N = rng.randint(2, 30)
            s = rng.uniform(0.05, 0.95)
            if N <= 2 * s:
                continue
            ell = rng.uniform(-2 * s + 0.02, 0.0)
            if margin_at_infinity(s, N, ell) >= 0.0:
                continue
            found += 1
            cs = critical_set(N, s, ell)
            assert len(cs.crossings) == 1, (N, s, ell)
            p_jl = joseph_lundgren_exponent(N, s, ell)
            assert cs.crossings[0].p == pytest.approx(p_jl, rel=1e-9)


class TestCriticalSet:
    def test_empty_in_subcritical_regime(self):
        cs = critical_set(5, 0.5, 0.0)
        assert cs.is_empty
        assert cs.intervals == (Label.SUBCRITICAL,)

    def test_first_interval_always_subcritical(self):
        for args in ((5, 0.5, 0.0), (8, 0.1, 0.0), (11, 0.9, 0.0), (8, 0.05, 0.001)):
            cs = critical_set(*args)
            assert cs.intervals[0] is Label.SUBCRITICAL

    def test_labels_alternate_across_transversal_crossings(self):
        cs = critical_set(9, 0.3, 0.0)
        assert len(cs.crossings) == 1 and not cs.crossings[0].tangential
        assert cs.intervals == (Label.SUBCRITICAL, Label.SUPERCRITICAL)

    def test_midpoint_labels_agree_with_classify(self):
        N, s = 8, 0.05
        wt = weight_thresholds(N, s)
        ell = 0.5 * (wt.ell1 + wt.ell2)
        cs = critical_set(N, s, ell)
        bounds_p = [cs.p_sobolev] + list(cs.exponents)
        for i, label in enumerate(cs.intervals[:-1]):
            p_lo, p_hi = bounds_p[i], bounds_p[i + 1] if i + 1 < len(bounds_p) else None
            p_mid = 0.5 * (p_lo + p_hi) if p_hi else p_lo * 2.0
            assert classify(ProblemParams(N, s, ell, p_mid)).label is label
        # final interval: probe a decade beyond the last crossing
        p_probe = cs.exponents[-1] * 10.0
        assert classify(ProblemParams(N, s, ell, p_probe)).label is cs.intervals[-1]

    def test_crossings_classify_critical(self):
        cs = critical_set(11, 0.6, 0.0)
        for c in cs.crossings:
            assert classify(ProblemParams(11, 0.6, 0.0, c.p)).label is Label.CRITICAL

    def test_window_pattern_positive_weight(self):
        N, s = 8, 0.05
        wt = weight_thresholds(N, s)
        cs = critical_set(N, s, 0.5 * (wt.ell1 + wt.ell2))
        assert [l.value for l in cs.intervals] == [
            "subcritical",
            "supercritical",
            "subcritical",
        ]
        assert len(cs.crossings) == 2
        assert cs.p_sobolev < cs.exponents[0] < cs.exponents[1]

    def test_empty_beyond_third_threshold(self):
        N, s = 8, 0.05
        wt = weight_thresholds(N, s)
        assert critical_set(N, s, wt.ell3).is_empty
        assert critical_set(N, s, wt.ell3 * 2.0).is_empty


class TestOrderThreshold:
    def test_regression_values(self):
        assert order_threshold(8) == pytest.approx(S_8_REFERENCE, abs=1e-10)
        assert order_threshold(9) == pytest.approx(S_9_REFERENCE, abs=1e-10)

    def test_bracketing(self):
        for N in (8, 9):
            s_n = order_threshold(N)
            assert margin_at_infinity(s_n - 1e-6, N, 0.0) < 0.0
            assert margin_at_infinity(s_n + 1e-6, N, 0.0) > 0.0

    @pytest.mark.parametrize("N", [7, 10, 3])
    def test_domain(self, N):
        with pytest.raises(DomainError):
            order_threshold(N)


class TestOrderWindowNegativeWeight:
    def test_equal_pair_low_dimension(self):
        lo, hi = order_thresholds_negative_weight(3, -0.5)
        assert lo == hi
        assert margin_at_infinity(lo - 1e-7, 3, -0.5) < 0.0
        assert margin_at_infinity(lo + 1e-7, 3, -0.5) > 0.0

    def test_one_dimensional_case(self):
        lo, hi = order_thresholds_negative_weight(1, -0.5)
        assert 0.25 < lo <= hi < 0.5

    def test_majorizes_zero_weight_threshold(self):
        s8 = order_threshold(8)
        lo, _ = order_thresholds_negative_weight(8, -0.05)
        assert lo >= s8

    def test_domain_when_margin_always_negative(self):
        with pytest.raises(DomainError):
            order_thresholds_negative_weight(10, -0.01)  # N >= 10 + 4l
        with pytest.raises(DomainError):
            order_thresholds_negative_weight(3, 0.5)  # positive weight


class TestTurningOrder:
    def test_bracket(self):
        t8 = turning_order(8)
        assert 0.0 < t8 < 1.0
        assert margin_at_infinity_ds(t8 - 1e-6, 8, 0.0) < 0.0
        assert margin_at_infinity_ds(t8 + 1e-6, 8, 0.0) > 0.0

    def test_precedes_order_threshold(self):
        assert turning_order(8) < order_threshold(8)

    def test_saturates_at_one_for_large_dimension(self):
        assert turning_order(20) == 1.0
        assert turning_order(40) == 1.0

    def test_domain(self):
        with pytest.raises(DomainError):
            turning_order(7)


class TestWeightThresholds:
    def test_ordering_small_order(self):
        wt = weight_thresholds(8, 0.05)
        assert 0.0 < wt.ell1 < wt.ell2 <= wt.ell3

    def test_endpoint_equality_at_first_threshold(self):
        for N, s in ((8, 0.05), (8, 0.2), (10, 0.5), (12, 0.8)):
            wt = weight_thresholds(N, s)
            A = reduced_sup(N, s)
            g_at_end = jl_ratio(reduced_from_x(N, s, wt.ell1, A))
            mt = jl_threshold(N, s)
            assert abs(g_at_end - mt) <= 1e-10 * mt

    def test_peak_dominates_endpoint_bound(self):
        wt = weight_thresholds(8, 0.05)
        A = reduced_sup(8, 0.05)
        assert wt.ell2 >= weight_bound(A, 8, 0.05) - 1e-15
        assert wt.x_tilde < wt.x_peak <= A

    def test_slope_limit(self):
        assert weight_threshold_slope(8) == pytest.approx(-1.0 / 3.0, abs=1e-12)

    def test_slope_limit_matches_finite_differences(self):
        s = 1e-5
        A = reduced_sup(8, s)
        d = 1e-7 * A
        fd = (weight_bound(A, 8, s) - weight_bound(A - d, 8, s)) / d / s
        assert fd == pytest.approx(-1.0 / 3.0, abs=5e-4)

    def test_domain_above_order_threshold(self):
        s8 = order_threshold(8)
        with pytest.raises(DomainError):
            weight_thresholds(8, s8 + 0.5 * (1 - s8))
        with pytest.raises(DomainError):
            weight_thresholds(7, 0.1)


class TestMinSupercriticalDimension:
    def test_minimality(self):
        for s, ell in ((0.5, 0.0), (0.25, 0.3), (0.9, -0.4), (0.999, 0.0)):
            n_star = min_supercritical_dimension(s, ell)
            assert n_star >= 2
            assert margin_at_infinity(s, float(n_star), ell) < 0.0
            if n_star > 2:
                assert margin_at_infinity(s, float(n_star - 1), ell) >= 0.0

    def test_half_order_zero_weight(self):
        n_star = min_supercritical_dimension(0.5, 0.0)
        assert n_star == 9  # s_8 < 0.5 < s_9

    def test_margin_decreasing_in_dimension(self):
        rng = random.Random(31)
        for _ in range(100):
            s = rng.uniform(0.05, 0.95)
            ell = rng.uniform(-2 * s + 0.02, 2.0)
            values = [margin_at_infinity(s, float(N), ell) for N in range(2, 12)]
            assert all(a > b for a, b in zip(values, values[1:]))

    def test_domain(self):
        with pytest.raises(DomainError):
            min_supercritical_dimension(0.5, -1.5)


class TestThresholdReport:
    def test_dimension_only(self):
        report = threshold_report(N=8)
        assert report.order_threshold == pytest.approx(S_8_REFERENCE, abs=1e-10)
        assert report.turning_order is not None
        assert report.order_window is None
        assert report.weight_thresholds is None
        assert report.min_supercritical_dim is None

    def test_empty_with_notes_for_seven(self):
        report = threshold_report(N=7)
        assert report.is_empty
        assert len(report.notes) == 2

    def test_order_and_weight_query(self):
        report = threshold_report(N=9, s=0.3, ell=0.0)
        assert report.order_threshold is not None
        assert report.weight_thresholds is not None
        assert report.min_supercritical_dim is not None
        assert 0.0 < report.weight_thresholds.ell1 <= report.weight_thresholds.ell2

    def test_negative_weight_window(self):
        report = threshold_report(N=3, ell=-0.5)
        lo, hi = report.order_window
        assert lo == hi
        assert report.order_threshold is None  # zero-weight threshold not queried

    def test_min_dimension_only(self):
        report = threshold_report(s=0.5, ell=0.0)
        assert report.min_supercritical_dim == 9
        assert report.order_threshold is None

    def test_no_inputs(self):
        report = threshold_report()
        assert report.is_empty and not report.notes


class TestClassicalExponents:
    def test_infinite_up_to_ten(self):
        for N in (1, 5, 10):
            assert math.isinf(classical_jl_exponent(N))

    def test_eleven(self):
        assert classical_jl_exponent(11) == pytest.approx(
            (37.0 + 8.0 * math.sqrt(10.0)) / 9.0, rel=1e-15
        )

    def test_weighted_reduces_at_zero(self):
        for N in (2, 8, 11, 14, 25):
            assert classical_jl_exponent_weighted(N, 0.0) == classical_jl_exponent(N)

    def test_weighted_threshold_boundary(self):
        assert math.isinf(classical_jl_exponent_weighted(12, 0.5))  # N = 12 = 10 + 4*0.5
        assert math.isfinite(classical_jl_exponent_weighted(13, 0.5))

    def test_weighted_negative_weight(self):
        value = classical_jl_exponent_weighted(9, -0.5)
        assert math.isfinite(value) and value > 1.0

    def test_domain(self):
        with pytest.raises(DomainError):
            classical_jl_exponent(0)
        with pytest.raises(DomainError):
            classical_jl_exponent_weighted(5, -2.5)

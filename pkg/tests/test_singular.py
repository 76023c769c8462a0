import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from fracjl.criticality import (
    Label,
    ProblemParams,
    classify,
    decay_exponent,
    sobolev_exponent,
    spectral_lambda,
)
from fracjl.exponents import joseph_lundgren_exponent, order_threshold
from fracjl.singular import (
    amplitude_identity_residual,
    build_singular,
    integrability_flags,
    riesz_constant,
    scaled_profile,
    singular_stability,
)
from fracjl.specfun import DomainError


def _random_admissible(rng, max_log_ratio=2.0):
    while True:
        N = rng.randint(1, 30)
        s = rng.uniform(0.05, 0.95)
        if N <= 2 * s:
            continue
        ell = rng.uniform(-2 * s + 0.05, 3.0)
        p = sobolev_exponent(N, s, ell) * (1.0 + 10.0 ** rng.uniform(-2.0, max_log_ratio))
        return ProblemParams(N, s, ell, p)


class TestBuildSingular:
    def test_reference_point(self):
        sol = build_singular(ProblemParams(3, 0.5, 0.0, 5.0))
        assert sol.decay == pytest.approx(0.25, rel=1e-15)
        assert sol.amplitude == pytest.approx(
            spectral_lambda(0.75, 3, 0.5) ** 0.25, rel=1e-13
        )
        assert sol.weak_regime

    def test_value_at_one_is_amplitude(self):
        sol = build_singular(ProblemParams(4, 0.3, 0.8, 3.0))
        assert sol(1.0) == sol.amplitude

    def test_decreasing_and_blowing_up(self):
        sol = build_singular(ProblemParams(6, 0.7, -0.2, 4.0))
        values = [sol(r) for r in (1e-6, 1e-3, 1.0, 1e3)]
        assert all(a > b for a, b in zip(values, values[1:]))
        assert sol(1e-18) > 1e6

    def test_decay_strictly_decreasing_in_p(self):
        N, s, ell = 7, 0.4, 0.6
        decays = [decay_exponent(s, ell, p) for p in (2.0, 3.0, 6.0, 50.0)]
        assert all(a > b for a, b in zip(decays, decays[1:]))

    def test_distributional_floor(self):
        # (N + l)/(N - 2s) = 4/3 here; below it there is no profile
        with pytest.raises(DomainError):
            build_singular(ProblemParams(3, 0.5, 1.0, 1.3))

    def test_scaling_identity(self):
        sol = build_singular(ProblemParams(3, 0.5, 0.0, 5.0))
        rng = random.Random(3)
        for _ in range(200):
            m = 10.0 ** rng.uniform(-1, 1)
            r = 10.0 ** rng.uniform(-1, 1)
            lhs = m * sol(m ** (1.0 / sol.decay) * r)
            assert abs(lhs - sol(r)) <= 1e-13 * sol(r)


class TestRieszConstant:
    def test_dimension_three(self):
        assert riesz_constant(2.0, 3) == pytest.approx(4.0 * math.pi, rel=1e-13)

    def test_dimension_two(self):
        assert riesz_constant(1.0, 2) == pytest.approx(2.0 * math.pi, rel=1e-13)

    def test_limits_at_interval_ends(self):
        # numerator gamma pole at alpha -> 0+, denominator pole at alpha -> N-
        assert riesz_constant(1e-12, 3) > 1e10
        assert riesz_constant(3.0 - 1e-12, 3) < 1e-10

    @pytest.mark.parametrize("alpha", [0.0, -1.0, 3.0, 5.0])
    def test_domain(self, alpha):
        with pytest.raises(DomainError):
            riesz_constant(alpha, 3)


class TestAmplitudeIdentity:
    def test_reference_point(self):
        assert amplitude_identity_residual(ProblemParams(3, 0.5, 0.0, 5.0)) <= 1e-12

    def test_random_sample(self):
        rng = random.Random(17)
        worst = 0.0
        for _ in range(1000):
            params = _random_admissible(rng)
            worst = max(worst, amplitude_identity_residual(params))
        assert worst <= 1e-10

    def test_near_distributional_floor(self):
        N, s, ell = 4, 0.3, 0.5
        floor = (N + ell) / (N - 2 * s)
        params = ProblemParams(N, s, ell, floor * (1.0 + 1e-4))
        assert amplitude_identity_residual(params) <= 1e-8

    def test_domain(self):
        with pytest.raises(DomainError):
            amplitude_identity_residual(ProblemParams(3, 0.5, 1.0, 1.3))


class TestStability:
    def test_supercritical_is_stable(self):
        result = singular_stability(ProblemParams(12, 0.9, 0.0, 50.0))
        assert result.classification.label is Label.SUPERCRITICAL
        assert result.stable and result.margin > 0.0

    def test_subcritical_is_unstable(self):
        result = singular_stability(ProblemParams(5, 0.5, 0.0, 3.0))
        assert result.classification.label is Label.SUBCRITICAL
        assert not result.stable and result.margin < 0.0

    def test_margin_vanishes_at_crossing(self):
        s8 = order_threshold(8)
        s = 0.8 * s8
        p_jl = joseph_lundgren_exponent(8, s, 0.0)
        result = singular_stability(ProblemParams(8, s, 0.0, p_jl))
        assert result.stable
        from fracjl.criticality import hardy_constant

        assert abs(result.margin) <= 1e-8 * hardy_constant(8, s)

    def test_agrees_with_classifier_everywhere(self):
        rng = random.Random(23)
        for _ in range(300):
            params = _random_admissible(rng)
            result = singular_stability(params)
            expected = classify(params).label in (Label.CRITICAL, Label.SUPERCRITICAL)
            assert result.stable == expected

    def test_domain(self):
        with pytest.raises(DomainError):
            singular_stability(ProblemParams(3, 0.5, 0.0, 1.5))  # p <= p_S


class TestIntegrabilityFlags:
    def test_at_sobolev_boundary(self):
        N, s, ell = 5, 0.4, 0.2
        p_s = sobolev_exponent(N, s, ell)
        flags = integrability_flags(ProblemParams(N, s, ell, p_s))
        assert flags.distributional and not flags.weak
        below = integrability_flags(ProblemParams(N, s, ell, p_s * (1 - 1e-9)))
        assert not below.weak and not below.decay_below_half

    def test_large_exponent(self):
        flags = integrability_flags(ProblemParams(5, 0.4, 0.2, 1e6))
        assert flags.distributional and flags.weak and flags.decay_below_half

    def test_small_exponent(self):
        # (N + l)/(N - 2s) = (3+0)/(3-1) = 1.5 > p
        flags = integrability_flags(ProblemParams(3, 0.5, 0.0, 1.2))
        assert not flags.distributional and not flags.weak


class TestScaledProfile:
    def test_identity_at_one(self):
        sol = build_singular(ProblemParams(3, 0.5, 0.0, 5.0))
        mapped = scaled_profile(sol, 1.0, sol.decay)
        for r in (0.2, 1.0, 7.0):
            assert mapped(r) == sol(r)

    def test_singular_solution_is_fixed_point(self):
        sol = build_singular(ProblemParams(4, 0.6, 0.5, 4.0))
        mapped = scaled_profile(sol, 3.7, sol.decay)
        for r in (0.1, 1.0, 12.0):
            assert mapped(r) == pytest.approx(sol(r), rel=1e-13)

    @given(
        st.floats(min_value=0.1, max_value=10.0),
        st.floats(min_value=0.1, max_value=10.0),
        st.floats(min_value=0.05, max_value=5.0),
    )
    @settings(max_examples=200, deadline=None)
    def test_composition_group_law(self, a, b, r):
        decay = 0.5
        f = lambda t: 1.0 / (1.0 + t)
        once = scaled_profile(scaled_profile(f, a, decay), b, decay)
        combined = scaled_profile(f, a * b, decay)
        assert once(r) == pytest.approx(combined(r), rel=1e-13)

    def test_domain(self):
        with pytest.raises(DomainError):
            scaled_profile(lambda r: r, -1.0, 0.5)
        with pytest.raises(DomainError):
            scaled_profile(lambda r: r, 1.0, 0.0)

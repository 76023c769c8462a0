import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fracjl.specfun import (
    EULER_GAMMA,
    DomainError,
    digamma,
    log_gamma,
    normalization_constants,
    trigamma,
)


def digamma_series(z: float, terms: int = 10**6) -> float:
    """Independent oracle: partial sum of the defining series plus an
    integral tail correction."""
    n = np.arange(terms, dtype=float)
    partial = float(np.sum(1.0 / (n + 1.0) - 1.0 / (n + z)))
    tail = math.log((terms + z) / (terms + 1.0)) + 0.5 * (z - 1.0) / (
        (terms + 1.0) * (terms + z)
    )
    return -EULER_GAMMA + partial + tail


def trigamma_series(z: float, terms: int = 10**6) -> float:
    """Independent oracle: partial sum of sum 1/(z+n)^2 plus the
    Euler-Maclaurin tail."""
    n = np.arange(terms, dtype=float)
    partial = float(np.sum(1.0 / (z + n) ** 2))
    return partial + 1.0 / (terms + z) + 0.5 / (terms + z) ** 2


class TestLogGamma:
    def test_at_one(self):
        assert log_gamma(1.0) == pytest.approx(0.0, abs=1e-15)

    def test_at_half(self):
        assert log_gamma(0.5) == pytest.approx(math.log(math.sqrt(math.pi)), rel=1e-13)

    def test_at_five(self):
        assert log_gamma(5.0) == pytest.approx(math.log(24.0), rel=1e-14)

    @pytest.mark.parametrize("bad", [0.0, -1.0, -0.5, math.nan, math.inf])
    def test_rejects_nonpositive(self, bad):
        with pytest.raises(DomainError):
            log_gamma(bad)

    @given(st.floats(min_value=-3.0, max_value=3.0))
    @settings(max_examples=300, deadline=None)
    def test_recurrence(self, exponent):
        z = 10.0**exponent
        lhs = log_gamma(z + 1.0) - log_gamma(z) - math.log(z)
        assert abs(lhs) <= 1e-12 * (1.0 + abs(math.log(z)))


class TestDigamma:
    def test_at_one(self):
        assert digamma(1.0) == pytest.approx(-EULER_GAMMA, abs=1e-14)

    def test_at_half(self):
        assert digamma(0.5) == pytest.approx(-2.0 * math.log(2.0) - EULER_GAMMA, abs=1e-14)

    def test_at_two(self):
        assert digamma(2.0) == pytest.approx(1.0 - EULER_GAMMA, abs=1e-14)

    def test_rejects_nonpositive(self):
        with pytest.raises(DomainError):
            digamma(0.0)
        with pytest.raises(DomainError):
            digamma(-2.5)

    @given(st.floats(min_value=-3.0, max_value=3.0))
    @settings(max_examples=300, deadline=None)
    def test_recurrence(self, exponent):
        z = 10.0**exponent
        assert abs(digamma(z + 1.0) - digamma(z) - 1.0 / z) <= 1e-12

    @pytest.mark.parametrize("z", [0.25, 0.5, 1.0, 2.5, 7.5, 50.0, 400.0])
    def test_series_consistency(self, z):
        assert abs(digamma(z) - digamma_series(z)) <= 1e-8


class TestTrigamma:
    def test_at_one(self):
        assert trigamma(1.0) == pytest.approx(math.pi**2 / 6.0, rel=1e-13)

    def test_at_two(self):
        assert trigamma(2.0) == pytest.approx(math.pi**2 / 6.0 - 1.0, rel=1e-13)

    def test_at_half(self):
        assert trigamma(0.5) == pytest.approx(trigamma_series(0.5), rel=1e-13)
        assert trigamma(0.5) == pytest.approx(math.pi**2 / 2.0, rel=1e-13)

    @given(st.floats(min_value=-3.0, max_value=3.0))
    @settings(max_examples=300, deadline=None)
    def test_recurrence(self, exponent):
        z = 10.0**exponent
        lhs = trigamma(z + 1.0) - trigamma(z) + 1.0 / (z * z)
        assert abs(lhs) <= 1e-10 * max(1.0, trigamma(z))

    @given(st.floats(min_value=-5.0, max_value=5.0))
    @settings(max_examples=300, deadline=None)
    def test_positive(self, exponent):
        assert trigamma(10.0**exponent) > 0.0

    @pytest.mark.parametrize("z", [0.25, 1.0, 2.5, 7.5, 50.0])
    def test_series_consistency(self, z):
        assert abs(trigamma(z) - trigamma_series(z)) <= 1e-8 * max(1.0, trigamma(z))

    def test_rejects_nonpositive(self):
        with pytest.raises(DomainError):
            trigamma(-1.0)


class TestNormalizationConstants:
    def test_kappa_at_half(self):
        _, kappa = normalization_constants(4, 0.5)
        assert kappa == pytest.approx(1.0, rel=1e-14)

    def test_c_one_half(self):
        c, _ = normalization_constants(1, 0.5)
        assert c == pytest.approx(1.0 / math.pi, rel=1e-13)

    @pytest.mark.parametrize("s", [1e-9, 1.0 - 1e-9])
    def test_c_vanishes_at_order_limits(self, s):
        c, _ = normalization_constants(3, s)
        assert 0.0 < c < 1e-7

    def test_positive(self):
        for N in (1, 2, 5, 20):
            for s in (0.1, 0.5, 0.9):
                c, kappa = normalization_constants(N, s)
                assert c > 0.0 and kappa > 0.0

    @pytest.mark.parametrize("N,s", [(0, 0.5), (3, 0.0), (3, 1.0), (3, -0.2)])
    def test_domain(self, N, s):
        with pytest.raises(DomainError):
            normalization_constants(N, s)

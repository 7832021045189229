"""Series evaluation: p_k terms, brackets, short-circuit law, coefficient."""

import math

import pytest

from randsurf.series import (geodesic_length, mell_limit_pmf, p_term,
                             riemannian_bound_coefficient, riemannian_bounds,
                             series_table, systole_limit_bracket)
from randsurf.words import enumerate_trace_classes


@pytest.fixture(scope="module")
def table20():
    return enumerate_trace_classes(20)


class TestPTerm:
    def test_k3_empty_prefix(self, table20):
        assert p_term(3, table20) == pytest.approx(1 - math.exp(-0.5), abs=1e-12)

    def test_k4(self, table20):
        expect = math.exp(-0.5) * (1 - math.exp(-1.0))
        assert p_term(4, table20) == pytest.approx(expect, abs=1e-12)

    def test_table_too_small(self):
        small = enumerate_trace_classes(4)
        with pytest.raises(ValueError):
            p_term(5, small)

    def test_terms_bounded_and_summable(self, table20):
        ps = [p_term(k, table20) for k in range(3, 21)]
        assert all(0 <= p <= 1 for p in ps)
        assert sum(ps) <= 1 + 1e-12

    def test_tail_domination(self, table20):
        # p_k <= p_n / (e^(k-n) (1 - exp(-Lambda_n))) for 4 <= n <= k <= 20
        for n in range(4, 21):
            p_n = p_term(n, table20)
            denom = 1 - math.exp(-float(table20.lambda_sum[n]))
            for k in range(n, 21):
                assert p_term(k, table20) <= p_n / (math.exp(k - n) * denom) + 1e-15


class TestBracket:
    def test_n4_lower_is_direct_sum(self, table20):
        lo, hi = systole_limit_bracket(4)
        expect = (p_term(3, table20) * 2 * math.acosh(1.5)
                  + p_term(4, table20) * 2 * math.acosh(2.0))
        assert lo == pytest.approx(expect, abs=1e-12)
        assert hi > lo

    def test_n7_contains_reference_window(self):
        # the window [2.48432, 2.48434] after rounding the bracket outward
        # to 5 decimals
        lo, hi = systole_limit_bracket(7)
        lo_r = math.floor(lo * 1e5) / 1e5
        hi_r = math.ceil(hi * 1e5) / 1e5
        assert lo_r <= 2.48432
        assert hi_r >= 2.48434

    def test_nested_brackets(self):
        # S_n nondecreasing, upper ends nonincreasing, widths shrinking
        brackets = {n: systole_limit_bracket(n) for n in range(4, 21)}
        for n in range(4, 20):
            lo_n, hi_n = brackets[n]
            lo_m, hi_m = brackets[n + 1]
            assert lo_n <= lo_m
            assert hi_m <= hi_n
            assert (hi_m - lo_m) < (hi_n - lo_n)

    def test_limit_value_stabilizes(self):
        # the bracket pins the limit down to 2.50620615719086... at n=18
        lo, hi = systole_limit_bracket(18)
        assert hi - lo < 1e-9
        assert lo < 2.50620615719086 < hi

    def test_rejects_small_n(self):
        with pytest.raises(ValueError):
            systole_limit_bracket(3)

    def test_series_table_fields(self):
        t = series_table(7)
        assert set(t.p) == set(range(3, 8))
        assert t.S[7] == t.bracket[0]
        assert t.bracket[1] == t.S[7] + t.remainder


class TestMellLaw:
    def test_k1_zero(self):
        assert mell_limit_pmf(1) == 0.0

    def test_k2(self):
        assert mell_limit_pmf(2) == pytest.approx(1 - math.exp(-0.5), abs=1e-12)

    def test_sums_to_one(self):
        assert sum(mell_limit_pmf(k) for k in range(1, 41)) == pytest.approx(
            1.0, abs=1e-12)

    def test_nonnegative(self):
        assert all(mell_limit_pmf(k) >= 0 for k in range(1, 30))

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            mell_limit_pmf(0)


class TestRiemannianCoefficient:
    def test_value(self):
        assert riemannian_bound_coefficient(1e-9) == pytest.approx(2.87038, abs=1e-5)

    def test_half_value(self):
        assert 0.5 * riemannian_bound_coefficient(1e-9) == pytest.approx(
            1.43519, abs=1e-5)

    def test_loose_tolerance_underestimates(self):
        assert riemannian_bound_coefficient(1.0) <= riemannian_bound_coefficient(1e-9)

    def test_high_precision_crosscheck(self):
        # recompute the mean with 50-digit arithmetic
        import mpmath
        mpmath.mp.dps = 50
        def a(k):
            return mpmath.fsum(
                (mpmath.mpf(2) ** (j - 1) - 1) / j for j in range(1, k + 1))
        total = mpmath.fsum(
            k * (mpmath.e ** (-a(k - 1)) - mpmath.e ** (-a(k)))
            for k in range(2, 60))
        assert riemannian_bound_coefficient(1e-9) == pytest.approx(
            float(total), abs=1e-9)

    def test_rejects_bad_tolerance(self):
        with pytest.raises(ValueError):
            riemannian_bound_coefficient(0.0)


class TestRiemannianBounds:
    def test_equilateral_euclidean(self):
        lo, hi = riemannian_bounds(1.0, 0.5)
        assert lo == 1.0
        assert hi == pytest.approx(1.43519, abs=1e-5)

    def test_scaling(self):
        lo, hi = riemannian_bounds(3.0, 3.0)
        assert hi / lo == pytest.approx(riemannian_bound_coefficient(1e-9), rel=1e-9)

    def test_linear_in_m2(self):
        _, hi = riemannian_bounds(2.0, 1.0)
        assert hi == pytest.approx(2.87038, abs=1e-5)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            riemannian_bounds(0.0, 1.0)
        with pytest.raises(ValueError):
            riemannian_bounds(1.0, -2.0)


class TestGeodesicLength:
    def test_trace3(self):
        assert geodesic_length(3) == pytest.approx(2 * math.acosh(1.5), abs=1e-15)

    def test_monotone(self):
        vals = [geodesic_length(t) for t in range(3, 30)]
        assert vals == sorted(vals)

    def test_rejects_small_trace(self):
        with pytest.raises(ValueError):
            geodesic_length(2)

"""Series-side tests: expansions, rho polynomials, certified evaluation."""

import math
from fractions import Fraction

import pytest

from qzeta.qseries import (
    EvalResult,
    QSeries,
    jacobi_check,
    limit_check,
    log2_q_series,
    rho,
    sigma,
    zeta_q_series,
    zeta_q_value,
    zeta_q_value_at,
    zeta_ref,
)


def divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


class TestSigma:
    def test_small_values(self):
        assert sigma(1, 6) == 4
        assert sigma(2, 6) == 12
        assert sigma(4, 1) == 1

    @pytest.mark.parametrize("k", [1, 2, 3, 5])
    def test_against_divisor_enumeration(self, k):
        for n in range(1, 200):
            assert sigma(k, n) == sum(d ** (k - 1) for d in divisors(n))

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            sigma(0, 5)
        with pytest.raises(ValueError):
            sigma(2, 0)


class TestRho:
    def test_first_few(self):
        assert rho(1).coeffs == (1,)
        assert rho(2).coeffs == (1,)
        assert rho(3).coeffs == (1, 1)
        assert rho(4).coeffs == (1, 4, 1)
        assert rho(5).coeffs == (1, 11, 11, 1)

    @pytest.mark.parametrize("k", range(1, 13))
    def test_value_at_one_is_factorial(self, k):
        assert rho(k)(1) == math.factorial(k - 1)

    @pytest.mark.parametrize("k", range(2, 12))
    def test_symmetric_coefficients(self, k):
        c = rho(k).coeffs
        assert c == tuple(reversed(c))

    @pytest.mark.parametrize("k", range(2, 10))
    def test_generates_power_weighted_geometric_series(self, k):
        # x rho_k(x) / (1-x)^k = sum m^(k-1) x^m, checked through x^40
        order = 41
        r = rho(k).coeffs
        series = [0] * order
        for i, ri in enumerate(r):
            for m in range(order):
                e = 1 + i + m
                if e < order:
                    series[e] += ri * math.comb(m + k - 1, k - 1)
        assert series == [m ** (k - 1) for m in range(order)]


class TestZetaQSeries:
    def test_divisor_counts_for_k1(self):
        s = zeta_q_series(1, 8)
        assert s.coeffs == (0, 1, 2, 2, 3, 2, 4, 2)

    @pytest.mark.parametrize("k", range(1, 9))
    def test_representations_agree(self, k):
        a = zeta_q_series(k, 120, "divisor-sum")
        b = zeta_q_series(k, 120, "lambert")
        c = zeta_q_series(k, 120, "rho")
        assert a == b == c

    def test_rejects_unknown_representation(self):
        with pytest.raises(ValueError):
            zeta_q_series(2, 10, "euler-product")

    def test_order_mismatch_rejected(self):
        with pytest.raises(ValueError):
            QSeries((0, 1), 3)


class TestLog2Series:
    def test_leading_coefficients(self):
        s = log2_q_series(6)
        assert s.coeffs == (0, 1, 0, 2, -1, 2)

    def test_matches_divisor_parity_formula(self):
        s = log2_q_series(120)
        for n in range(1, 120):
            odd = sum(1 for d in divisors(n) if d % 2)
            even = sum(1 for d in divisors(n) if d % 2 == 0)
            assert s[n] == odd - even


class TestJacobi:
    def test_identity_holds(self):
        assert jacobi_check(200)

    def test_lattice_point_counts(self):
        # r2(n) = 4 * (d_{1 mod 4}(n) - d_{3 mod 4}(n)), the identity behind
        # the check, against brute-force counting of a^2 + b^2 = n
        for n in range(1, 80):
            r2 = sum(
                1
                for a in range(-n, n + 1)
                for b in range(-n, n + 1)
                if a * a + b * b == n
            )
            bychi = 4 * sum(1 if d % 4 == 1 else -1 for d in divisors(n) if d % 2)
            assert r2 == bychi


class TestZetaQValue:
    def test_worked_example(self):
        r = zeta_q_value(1, 2, 4)
        assert r.value == Fraction(54, 35)
        assert r.tail_bound == Fraction(2, 31)
        assert r.tail_bound < Fraction(7, 100)

    def test_single_term_k2(self):
        assert zeta_q_value(2, 2, 1).value == 2

    def test_enclosures_nest_and_shrink(self):
        results = [zeta_q_value(3, 2, t) for t in (5, 10, 20, 40, 80)]
        for a, b in zip(results, results[1:]):
            assert a.lo <= b.lo and b.hi <= a.hi
            assert b.tail_bound < a.tail_bound
        assert results[-1].tail_bound < Fraction(1, 10**20)

    def test_rho_route_matches_divisor_sum_route(self):
        # same number from a structurally different series, at q = -1/2
        ev = zeta_q_value(2, -2, 60)
        q = Fraction(-1, 2)
        direct = sum(sigma(2, n) * q**n for n in range(1, 300))
        direct_tail = Fraction(2 * 300**2, 2**300)
        assert abs(ev.value - direct) <= ev.tail_bound + direct_tail

    def test_rejects_bad_p(self):
        with pytest.raises(ValueError):
            zeta_q_value(2, 1, 5)
        with pytest.raises(ValueError):
            zeta_q_value(2, 0, 5)

    def test_arbitrary_rational_point(self):
        ev = zeta_q_value_at(2, Fraction(1, 3), 40)
        direct = sum(sigma(2, n) * Fraction(1, 3) ** n for n in range(1, 200))
        assert abs(ev.value - direct) <= ev.tail_bound + Fraction(200**2, 3**200)


class TestClassicalLimit:
    def test_zeta_ref_brackets_known_values(self):
        lo, hi = zeta_ref(2)
        assert float(lo) < math.pi**2 / 6 < float(hi)
        assert hi - lo < Fraction(1, 10**5)
        lo3, hi3 = zeta_ref(3)
        assert float(lo3) < 1.2020569031595943 < float(hi3)

    def test_scaled_values_approach_factorial_times_zeta(self):
        rows = limit_check(2, [Fraction(1, 2), Fraction(9, 10), Fraction(99, 100)])
        mids = [(r.lo + r.hi) / 2 for r in rows]
        target = math.pi**2 / 6
        # certified enclosures are tight
        for r in rows:
            assert r.hi - r.lo < Fraction(1, 10**6)
        # monotone approach from below, last point within 2 percent
        assert mids[0] < mids[1] < mids[2]
        assert float(mids[2]) > 0.98 * target
        assert float(rows[2].hi) < target

    def test_enclosure_agrees_with_exact_evaluation(self):
        q = Fraction(1, 2)
        (row,) = limit_check(3, [q])
        ev = zeta_q_value_at(3, q, 120)
        scale = (1 - q) ** 3
        assert row.lo <= scale * ev.value <= row.hi

    def test_rejects_k1(self):
        with pytest.raises(ValueError):
            limit_check(1, [Fraction(1, 2)])

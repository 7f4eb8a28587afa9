"""Exponent-engine tests: profiles, fits, measure reports, empirical checks."""

import math
from fractions import Fraction

import pytest

from qzeta.groups import nu_l, zeta1_group
from qzeta.linforms import APERY, BV, THEOREM1, THEOREM2, Family, cvector
from qzeta.measures import (
    MEASURE_BASES,
    Direction,
    NuProfile,
    alpha_exponent,
    apery_limit_check,
    apery_numbers,
    d_exponent,
    direction,
    empirical_mu,
    family_form,
    fit_M_coeff,
    group_for,
    measure,
    mu_bound,
    nu_profile,
    omega_exponent,
)

BV_MU = 2 * math.pi**2 / (math.pi**2 - 2)


class TestDirection:
    def test_theorem1_rates(self):
        assert direction(THEOREM1).eta == (7, 8, 6, 8, 9, 7)

    def test_theorem2_rates(self):
        assert direction(THEOREM2).eta == (11, 5, 9, 10, 6, 8, 9, 7, 7, 8)

    def test_bv_rates_all_one(self):
        assert direction(BV).eta == (1,) * 6

    def test_label_lookup(self):
        d = direction(THEOREM1)
        assert d["12"] == 9 and d["00"] == 7

    def test_scaling(self):
        assert direction(BV).scaled(3).eta == (3,) * 6

    def test_negative_rate_rejected(self):
        with pytest.raises(ValueError):
            direction(Family("zeta1", (1, 3, 1, 2), (1, 1, 1, 2), "bad"))


class TestNuProfile:
    def test_bv_profile_vanishes(self):
        prof = nu_profile(direction(BV), group_for("zeta1"))
        assert prof.breakpoints == () and prof.values == (0,)
        assert prof.phi(Fraction(7, 13)) == 0

    def test_zero_near_zero_and_nonnegative(self):
        prof = nu_profile(direction(THEOREM1), group_for("zeta1"))
        assert prof.values[0] == 0
        assert min(prof.values) >= 0
        assert all(0 < b < 1 for b in prof.breakpoints)

    def test_right_continuity(self):
        prof = nu_profile(direction(THEOREM1), group_for("zeta1"))
        b = prof.breakpoints[0]
        eps = Fraction(1, 10**9)
        assert prof.phi(b) == prof.phi(b + eps)
        assert prof.phi(b) != prof.phi(b - eps)

    def test_phi_is_periodic(self):
        prof = nu_profile(direction(THEOREM1), group_for("zeta1"))
        assert prof.phi(Fraction(22, 7)) == prof.phi(Fraction(1, 7))

    def test_segments_tile_unit_interval(self):
        prof = nu_profile(direction(THEOREM2), group_for("zeta2"))
        segs = prof.segments
        assert segs[0][0] == 0 and segs[-1][1] == 1
        assert all(a[1] == b[0] for a, b in zip(segs, segs[1:]))

    def test_weight_violation_rejected(self):
        # tau alone does not preserve the factorial weight of the Theorem-1
        # direction; the full 12-element group must be refused.
        with pytest.raises(ValueError):
            nu_profile(direction(THEOREM1), zeta1_group())

    def test_unknown_base_rejected(self):
        with pytest.raises(ValueError):
            nu_profile(direction(BV), group_for("zeta1"), base=("01", "99"))


class TestProfileExactAgreement:
    """The profile is the bulk limit of the exact gain.

    Exact floors and profile floors can only disagree when {n/l} sits on a
    breakpoint, where the per-n offsets tip the balance; those moduli are
    checked to deviate by at most 1 and everything else must agree exactly.
    """

    def check(self, family, n, base):
        prof = nu_profile(direction(family), group_for(family.kind), base)
        c = cvector(family.params(n))
        G = group_for(family.kind)
        for l in range(10, n + 1):
            x = Fraction(n, l) % 1
            exact = nu_l(c, G, l, base)
            if prof.is_breakpoint(x):
                assert abs(exact - prof.phi(x)) <= 1, (l, exact, prof.phi(x))
            else:
                assert exact == prof.phi(x), (l, exact, prof.phi(x))

    def test_theorem1_at_60_factorial_base(self):
        self.check(THEOREM1, 60, None)

    def test_theorem1_at_60_measure_base(self):
        self.check(THEOREM1, 60, MEASURE_BASES["theorem1"])

    def test_theorem2_at_40_factorial_base(self):
        self.check(THEOREM2, 40, None)

    def test_theorem2_at_40_measure_base(self):
        self.check(THEOREM2, 40, MEASURE_BASES["theorem2"])

    def test_theorem2_offsets_vanish_so_agreement_is_exact(self):
        # the Theorem-2 c-values are exactly linear in n, so even the
        # breakpoint moduli agree, down to l = 2
        prof = nu_profile(direction(THEOREM2), group_for("zeta2"))
        c = cvector(THEOREM2.params(40))
        G = group_for("zeta2")
        for l in range(2, 41):
            assert nu_l(c, G, l) == prof.phi(Fraction(40, l)), l


class TestOmegaExponent:
    def test_zero_profile(self):
        assert omega_exponent(nu_profile(direction(BV), group_for("zeta1"))) == 0.0

    def test_indicator_of_upper_half(self):
        # (3/pi^2)(psi'(1/2) - psi'(1)) = (3/pi^2)(pi^2/2 - pi^2/6) = 1
        prof = NuProfile(
            "zeta1", ("01", "21", "22"), (Fraction(1, 2),), (0, 1), (Fraction(1, 2),)
        )
        assert omega_exponent(prof) == pytest.approx(1.0, abs=1e-12)

    def test_quadratic_scaling(self):
        # phi_{t*eta}(x) = phi_eta({t x}) plus the trigamma multiplication
        # theorem force omega(t*eta) = t^2 * omega(eta)
        d = direction(THEOREM1)
        G = group_for("zeta1")
        w1 = omega_exponent(nu_profile(d, G))
        w2 = omega_exponent(nu_profile(d.scaled(2), G))
        assert w2 == pytest.approx(4 * w1, abs=1e-9)


class TestAlphaD:
    def test_alpha_theorem1(self):
        assert alpha_exponent((8, 6, 8, 15), "zeta1") == Fraction(335, 2)

    def test_alpha_bv(self):
        assert alpha_exponent((1, 1, 1, 2), "zeta1") == 3

    def test_alpha_theorem2(self):
        assert alpha_exponent((5, 6, 7, 14, 15), "zeta2") == 155

    def test_alpha_unknown_kind(self):
        with pytest.raises(ValueError):
            alpha_exponent((1, 2, 3), "zeta3")

    def test_d_single_layer(self):
        assert d_exponent(direction(THEOREM1)) == pytest.approx(81 * 3 / math.pi**2)

    def test_d_double_layer(self):
        assert d_exponent(direction(THEOREM2)) == pytest.approx(221 * 3 / math.pi**2)


class TestFitM:
    def test_bv_coefficient(self):
        fit = fit_M_coeff(BV, 12)
        assert fit.coeff == Fraction(3, 2)
        assert fit.stable and fit.period == 1
        assert set(fit.second_diffs) == {3}

    def test_constant_family_fits_zero(self):
        toy = Family("zeta1", (0, 0, 0, 0), (2, 1, 1, 2), "toy")
        fit = fit_M_coeff(toy, 6)
        assert fit.coeff == 0 and fit.stable

    def test_small_range_rejected(self):
        with pytest.raises(ValueError):
            fit_M_coeff(BV, 5)


class TestMuBound:
    def test_bv_closed_form(self):
        rep = mu_bound(3, 3 / math.pi**2, 0.0, Fraction(3, 2))
        assert rep.mu_bound == pytest.approx(BV_MU, abs=1e-8)

    def test_report_identities(self):
        rep = mu_bound(3, 3 / math.pi**2, 0.0, Fraction(3, 2))
        assert rep.kappa == pytest.approx(rep.lambda_ + float(rep.alpha), abs=1e-12)
        assert rep.mu_bound == pytest.approx(-float(rep.alpha) / rep.lambda_, abs=1e-12)

    def test_no_decay_is_an_error(self):
        with pytest.raises(ValueError, match="no irrationality conclusion"):
            mu_bound(3, 2.0, 0.0, 1)

    def test_scale_invariance(self):
        a, d, w, m = 3.0, 3 / math.pi**2, 0.25, Fraction(3, 2)
        base = mu_bound(Fraction(3), d, w, m).mu_bound
        for t in (2, 5):
            scaled = mu_bound(t**2 * Fraction(3), t**2 * d, t**2 * w, t**2 * m)
            assert scaled.mu_bound == pytest.approx(base, rel=1e-12)


class TestMeasure:
    def test_bv(self):
        rep = measure(BV)
        assert rep.M_coeff == Fraction(3, 2)
        assert rep.omega_exp == 0.0
        assert rep.mu_bound == pytest.approx(BV_MU, abs=1e-8)

    def test_theorem1(self):
        rep = measure(THEOREM1)
        assert rep.alpha == Fraction(335, 2)
        assert rep.M_coeff == 80
        assert rep.mu_bound == pytest.approx(2.42343562, abs=1e-6)

    def test_theorem2(self):
        rep = measure(THEOREM2)
        assert rep.alpha == 155
        assert rep.M_coeff == 78
        assert rep.mu_bound == pytest.approx(4.07869374, abs=1e-6)

    def test_lambda_negative_for_all_reported_families(self):
        for fam in (BV, THEOREM1, THEOREM2):
            assert measure(fam).lambda_ < 0


class TestEmpiricalMu:
    def test_bv_drifts_toward_closed_form(self):
        ests = empirical_mu(BV, 2, 10)
        assert all(e > 1 for e in ests)
        assert abs(ests[-1] - BV_MU) < 0.25
        # converging: the last oscillation is tighter than the first
        assert max(ests[-3:]) - min(ests[-3:]) < max(ests[:3]) - min(ests[:3])

    def test_theorem1_exceeds_its_bound(self):
        bound = measure(THEOREM1).mu_bound
        ests = empirical_mu(THEOREM1, 2, 4)
        assert all(e > bound for e in ests)
        assert ests[-1] < 3.0

    def test_any_family_first_estimate_finite(self):
        assert empirical_mu(APERY, 2, 1)[0] > 1

    def test_bad_p(self):
        with pytest.raises(ValueError):
            empirical_mu(BV, 1, 3)

    def test_empty_range(self):
        with pytest.raises(ValueError):
            empirical_mu(BV, 2, 0)


class TestAperyLimit:
    def test_oracle_values(self):
        assert apery_numbers(4) == [1, 3, 19, 147, 1251]

    @pytest.mark.parametrize("n", [0, 1, 2, 3])
    def test_limit_matches_oracle(self, n):
        assert apery_limit_check(n)

    def test_cost_bound(self):
        with pytest.raises(ValueError):
            apery_limit_check(5)

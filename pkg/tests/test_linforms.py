"""Linear-form tests: exact A, B, c-vectors, inclusions, certification."""

from fractions import Fraction

import pytest

from qzeta.linforms import (
    APERY,
    BV,
    THEOREM1,
    THEOREM2,
    CVector,
    ParamsZ1,
    ParamsZ2,
    RatFunc,
    UnitMono,
    _tail_tables,
    certify,
    cvector,
    determine_M,
    growth_scan,
    heine_terms,
    linform,
    linform_zeta1,
    linform_zeta2,
    numeric_form_value,
    summand_z1,
    summand_z2,
    verify_inclusion,
)
from qzeta.parith import FactoredPPoly, PPoly, cyclotomic_value, dnp


class TestParams:
    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            ParamsZ1(0, 1, 1, 2)
        with pytest.raises(ValueError):
            ParamsZ2(1, 1, 1, 2, 0)

    def test_admissibility(self):
        assert ParamsZ1(1, 1, 1, 2).admissible
        assert not ParamsZ1(1, 1, 1, 3).admissible  # sum too small
        assert not ParamsZ1(5, 3, 3, 4).admissible  # a1 + a2 > b
        assert ParamsZ2(1, 1, 1, 2, 2).admissible
        assert not ParamsZ2(2, 1, 1, 2, 2).admissible  # a1 >= b2
        assert not ParamsZ2(1, 1, 1, 2, 1).admissible

    def test_cvector_rejects_inadmissible(self):
        with pytest.raises(ValueError):
            cvector(ParamsZ1(1, 1, 1, 3))
        with pytest.raises(ValueError):
            heine_terms(ParamsZ1(1, 1, 1, 3), 5, 2)


class TestCVector:
    def test_zeta1_example(self):
        cv = cvector(ParamsZ1(9, 7, 9, 16))
        assert cv.values == (8, 8, 6, 8, 8, 6)
        assert cv.m == 8
        assert cv["00"] == 8 and cv["11"] == 6 and cv["12"] == 8

    def test_zeta1_all_zero(self):
        assert cvector(ParamsZ1(1, 1, 1, 2)).values == (0,) * 6

    def test_zeta2_example(self):
        cv = cvector(ParamsZ2(6, 7, 8, 16, 17))
        assert cv["00"] == 11
        assert (cv["11"], cv["12"], cv["13"]) == (5, 9, 10)
        assert (cv["21"], cv["22"], cv["23"]) == (6, 8, 9)
        assert (cv["31"], cv["32"], cv["33"]) == (7, 7, 8)
        assert cv.m1m2 == (11, 10)

    def test_weight_sum_matches_parameter_sum(self):
        # sum over the factorial labels is a group invariant; spot-check its value
        cv = cvector(ParamsZ1(9, 7, 9, 16))
        assert sum(cv[l] for l in cv.factorial_labels()) == 9 + 7 + 9 - 16 + 13


class TestUnitMono:
    @pytest.mark.parametrize("p", [2, 3, -2])
    def test_one_minus_q_power(self, p):
        q = Fraction(1, p)
        for j in range(1, 8):
            assert UnitMono.one_minus_q_power(j).value_at(p) == 1 - q**j

    @pytest.mark.parametrize("p", [2, 3, -2])
    def test_one_minus_p_power_both_signs(self, p):
        for d in (-5, -2, -1, 1, 2, 5):
            assert UnitMono.one_minus_p_power(d).value_at(p) == 1 - Fraction(p) ** d

    def test_product_and_inverse(self):
        u = UnitMono.one_minus_q_power(3) * UnitMono.one_minus_p_power(2).inv()
        v = u.value_at(5)
        assert v == (1 - Fraction(1, 125)) / (1 - 25)


class TestRatFunc:
    def test_sum_and_value(self):
        # 1/(p-1) + 1/(p^2-1) - p/(p^3-1), common denominator assembled exactly
        t1 = RatFunc(PPoly.const(1), 0, {1: 1})
        t2 = RatFunc(PPoly.const(1), 0, {1: 1, 2: 1})
        t3 = RatFunc(PPoly.monomial(1, -1), 0, {1: 1, 3: 1})
        s = RatFunc.sum([t1, t2, t3])
        for p in (2, 3, 7, -3):
            expect = (
                Fraction(1, p - 1) + Fraction(1, p * p - 1) - Fraction(p, p**3 - 1)
            )
            assert s.value_at(p) == expect

    def test_ord_p_convention(self):
        assert RatFunc.zero().ord_p() == 0
        assert RatFunc(PPoly.monomial(3, 4), 1).ord_p() == 2
        assert RatFunc(PPoly.const(7), 5).ord_p() == -5

    def test_reduce_preserves_value(self):
        raw = RatFunc(PPoly.p_power_minus_one(6).shift(2), 1, {1: 1, 2: 1, 6: 1})
        red = raw.reduce()
        assert red.equal(raw)
        for p in (2, 5):
            assert red.value_at(p) == raw.value_at(p)
        # (p^6-1)p^2 / (p (p-1)(p+1) Phi_6) = p Phi_3
        assert red.dpow == 0 and red.dphi == {}

    def test_phi_order(self):
        r = RatFunc(PPoly.p_power_minus_one(4), 0, {1: 1})
        assert r.phi_order(4) == 1
        assert r.phi_order(1) == 0
        assert r.phi_order(3) == 0


class TestTailTables:
    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_partial_sums_exact(self, p):
        t1, t2 = _tail_tables(9)
        for j in range(9):
            want1 = sum((Fraction(1, p**s - 1) for s in range(1, j)), Fraction(0))
            want2 = sum(
                (Fraction(p**s, (p**s - 1) ** 2) for s in range(1, j)), Fraction(0)
            )
            assert t1[j].value_at(p) == want1
            assert t2[j].value_at(p) == want2


class TestSummand:
    def test_zeta1_structure(self):
        s = summand_z1(ParamsZ1(9, 7, 9, 16))
        assert s.expo == 9
        assert s.num_i == (1, 2, 3, 4, 5, 6)
        assert s.mult == tuple((j, 1) for j in range(9, 16))
        # symmetric case: prefactor numerator and denominator coincide
        assert s.prefactor_num == s.prefactor_den

    def test_zeta1_cancellation(self):
        # num 1..4 overlaps den 3..7, so 3 and 4 cancel
        s = summand_z1(ParamsZ1(4, 5, 3, 8))
        assert s.num_i == (1, 2)
        assert s.mult == ((5, 1), (6, 1), (7, 1))

    def test_zeta2_double_poles(self):
        s = summand_z2(ParamsZ2(6, 7, 8, 16, 17))
        assert s.expo == 12
        mult = dict(s.mult)
        assert mult[7] == 1 and mult[16] == 1
        assert all(mult[j] == 2 for j in range(8, 16))


class TestHeineTerms:
    def test_simplest_series(self):
        assert heine_terms(ParamsZ1(1, 1, 1, 2), 3, 2) == [
            Fraction(2),
            Fraction(2, 3),
            Fraction(2, 7),
        ]

    def test_rejects_small_p(self):
        with pytest.raises(ValueError):
            heine_terms(ParamsZ1(1, 1, 1, 2), 3, 1)


class TestAnchors:
    """Forms small enough to expand by hand."""

    @pytest.mark.parametrize("p", [2, 3, 5, -2])
    def test_simplest_form(self, p):
        f = linform_zeta1(ParamsZ1(1, 1, 1, 2))
        assert f.A.value_at(p) == p
        assert f.B.is_zero()
        assert f.M == 0

    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_polynomial_part_form(self, p):
        # S(x) = x^2/(1-qx) has a nonzero polynomial part
        f = linform_zeta1(ParamsZ1(2, 1, 1, 2))
        assert f.A.value_at(p) == p * p
        assert f.B.value_at(p) == Fraction(p * p, p - 1)
        assert f.M == 2

    @pytest.mark.parametrize("p", [2, 3, 5, -2])
    def test_simplest_double_pole_form(self, p):
        f = linform_zeta2(ParamsZ2(1, 1, 1, 2, 2))
        assert f.A.value_at(p) == p
        assert f.B.is_zero()
        assert f.M == 0

    def test_mixed_pole_orders(self):
        # denominators (1-qx)(1-q^2 x)^2: one simple and one double pole
        f = linform_zeta2(ParamsZ2(1, 1, 2, 3, 3), certify_at=2)
        assert f.A.value_at(2) == -8
        assert not f.B.is_zero()

    def test_dispatcher(self):
        assert linform(ParamsZ1(1, 1, 1, 2)).kind == "zeta1"
        assert linform(ParamsZ2(1, 1, 1, 2, 2)).kind == "zeta2"


class TestDenominatorData:
    def test_zeta1_exponents(self):
        f = linform_zeta1(ParamsZ1(9, 7, 9, 16), certify_at=None)
        assert f.d_exponents() == {l: 1 for l in range(1, 9)}
        for p in (2, 3):
            assert f.d_value(p) == dnp(8).value_at(p)

    def test_zeta2_exponents(self):
        f = linform_zeta2(ParamsZ2(6, 7, 8, 16, 17), certify_at=None)
        exps = f.d_exponents()
        assert exps == {l: (2 if l <= 10 else 1) for l in range(1, 12)}

    def test_m_agrees_after_full_reduction(self):
        # the p-order must not be hiding in unreduced cyclotomic content
        for params in (ParamsZ1(4, 3, 4, 7), ParamsZ2(2, 3, 3, 6, 7)):
            f = linform(params, certify_at=None)
            reduced = min(f.A.reduce().ord_p(), f.B.reduce().ord_p())
            assert determine_M(f) == reduced == f.M


class TestInclusion:
    @pytest.mark.parametrize(
        "params",
        [ParamsZ1(1, 1, 1, 2), ParamsZ1(9, 7, 9, 16), ParamsZ2(6, 7, 8, 16, 17)],
    )
    def test_trivial_omega(self, params):
        f = linform(params, certify_at=None)
        assert verify_inclusion(f)

    def test_oversized_omega_fails_with_witness(self):
        f = linform_zeta1(ParamsZ1(9, 7, 9, 16), certify_at=None)
        # degree alone forbids three factors of Phi_101 in either numerator
        omega = FactoredPPoly({101: 3})
        r = verify_inclusion(f, omega)
        assert not r
        assert "Phi_101" in r.witness

    def test_omega_with_p_power_rejected(self):
        f = linform_zeta1(ParamsZ1(1, 1, 1, 2), certify_at=None)
        r = verify_inclusion(f, FactoredPPoly({}, p_power=1))
        assert not r and "power of p" in r.witness


class TestNumerics:
    def test_enclosure_contains_exact_partial_sums(self):
        params = ParamsZ1(3, 2, 3, 5)
        enc, tail = numeric_form_value(params, 2, terms=60)
        exact = sum(heine_terms(params, 60, 2))
        assert enc.lo <= exact + tail and exact <= enc.hi
        assert 0 < tail < Fraction(1, 2**100)

    def test_rejects_small_p(self):
        with pytest.raises(ValueError):
            numeric_form_value(ParamsZ1(1, 1, 1, 2), 1)

    @pytest.mark.parametrize(
        "params",
        [ParamsZ1(9, 7, 9, 16), ParamsZ2(6, 7, 8, 16, 17)],
    )
    def test_certification_tight(self, params):
        f = linform(params, certify_at=None)
        rep = certify(f, 2, terms=400)
        assert rep.ok
        assert rep.residual < Fraction(1, 10**30)

    @pytest.mark.parametrize("p", [2, 3])
    def test_certification_small_grid(self, p):
        # every admissible parameter tuple in a small box
        for b in range(2, 7):
            for a1 in range(1, b):
                for a2 in range(1, b - a1 + 1):
                    for a0 in range(max(1, b + 1 - a1 - a2), b + 1):
                        f = linform_zeta1(ParamsZ1(a0, a1, a2, b), certify_at=None)
                        assert certify(f, p, terms=90).ok

    def test_certification_zeta2_sample(self):
        for params in (
            ParamsZ2(1, 1, 1, 2, 2),
            ParamsZ2(1, 2, 2, 3, 4),
            ParamsZ2(2, 2, 2, 4, 4),
            ParamsZ2(3, 3, 3, 5, 6),
            ParamsZ2(2, 3, 4, 8, 9),
        ):
            f = linform_zeta2(params, certify_at=None)
            assert certify(f, 2, terms=120).ok
            assert certify(f, 3, terms=120).ok


class TestFamilies:
    def test_first_members(self):
        assert THEOREM1.params(1).as_tuple() == (9, 7, 9, 16)
        assert THEOREM2.params(1).as_tuple() == (6, 7, 8, 16, 17)
        assert BV.params(1).as_tuple() == (2, 2, 2, 4)
        assert APERY.params(1).as_tuple() == (2, 2, 2, 4, 4)

    def test_bv_m_values_quadratic(self):
        ms = [linform(BV.params(n), certify_at=None).M for n in range(1, 7)]
        assert ms == [5, 12, 22, 35, 51, 70]
        second = [ms[i + 2] - 2 * ms[i + 1] + ms[i] for i in range(4)]
        assert all(d == 3 for d in second)

    def test_growth_exponents(self):
        rows = growth_scan(BV, 6, 2)
        a = [r["a_exponent"] for r in rows]
        assert all(x > y for x, y in zip(a, a[1:]))  # decreasing toward 3
        assert 3 < a[-1] < 3.7
        assert all(abs(r["f_exponent"]) < 0.5 for r in rows)

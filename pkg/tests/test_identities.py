from fractions import Fraction

import pytest

from gsmult.identities import (
    CheckResult,
    _wedge_fn_exact,
    check_ck1_closed_form,
    check_ck2_bound,
    check_floor_identities,
    check_lower_bound,
    check_ratio_bound,
    check_wedge_fn_nonneg,
)

from conftest import get_table


class TestCheckResult:
    def test_pass_iff_no_witnesses(self):
        with pytest.raises(ValueError):
            CheckResult(name="x", params={}, passed=True, witnesses=((1,),))
        with pytest.raises(ValueError):
            CheckResult(name="x", params={}, passed=False, witnesses=())


class TestFloorIdentities:
    def test_small_cases(self):
        # k = 2 with m = 2: floors stay equal; with m = 3 they step by one
        assert 3 * 1 // 2 == 2 * 1 // 2 == 1
        assert 2 * 2 // 3 == 1 and 3 * 2 // 3 == 2
        assert check_floor_identities(2, 64).passed
        assert check_floor_identities(3, 64).passed

    def test_m10_exhaustive(self):
        result = check_floor_identities(10, 10**4)
        assert result.passed and not result.witnesses

    def test_rejects_m1(self):
        with pytest.raises(ValueError):
            check_floor_identities(1, 10)


class TestCk1ClosedForm:
    def test_examples(self):
        assert get_table(3, 4).coeff(4, 1) == 12 == (3 - 1) * 4 * 3 // 2
        assert get_table(2, 2).coeff(2, 1) == 1
        assert check_ck1_closed_form(get_table(6, 100)).passed

    def test_all_small_degrees(self):
        for m in range(2, 7):
            assert check_ck1_closed_form(get_table(m, 64)).passed


class TestCk2Bound:
    def test_examples(self):
        assert 2 * get_table(3, 4).coeff(4, 2) == 40 <= 9 * 256
        assert 2 * get_table(2, 4).coeff(4, 2) == 6 <= 4 * 256
        result = check_ck2_bound(get_table(6, 128))
        assert result.passed
        assert 0 < result.extremal_ratio < 1

    def test_requires_k4(self):
        from gsmult.derivpoly import build_coeff_table

        with pytest.raises(ValueError):
            check_ck2_bound(build_coeff_table(2, 3))


class TestRatioBound:
    def test_theta_one_small(self):
        result = check_ratio_bound(get_table(2, 32), Fraction(1))
        assert result.passed
        assert result.extremal_ratio <= 1

    def test_exact_power_instance(self):
        # m = 3, theta = 2/3, k = 4, n = 1: 20**3 <= 12**3 * 27 * 4**6
        assert 20**3 <= 12**3 * 27 * 4**6
        assert check_ratio_bound(get_table(3, 32), Fraction(2, 3)).passed

    def test_rejects_below_two_over_m(self):
        with pytest.raises(ValueError):
            check_ratio_bound(get_table(2, 8), Fraction(1, 4))

    def test_tightness_near_two_over_m(self):
        # at theta = 2/m the recorded ratio comes within an order of magnitude of 1
        result = check_ratio_bound(get_table(4, 64), Fraction(1, 2))
        assert result.passed
        assert result.extremal_ratio > 0.1


class TestWedgeFnNonneg:
    def test_exact_integer_exponent(self):
        result = check_wedge_fn_nonneg(2, Fraction(1), grid_size=128)
        assert result.passed

    def test_half_point_value(self):
        # m = 2, theta = 1: f(1/2) = 2.25 - 0.25 - 1 = 1
        assert _wedge_fn_exact(2, 2, Fraction(1, 2)) == 1

    def test_endpoints(self):
        assert _wedge_fn_exact(3, 3, Fraction(0)) == 0
        assert _wedge_fn_exact(3, 3, Fraction(1)) == Fraction(2) ** 3 - 2 + Fraction(1, 3)

    def test_interval_path_fractional_exponent(self):
        result = check_wedge_fn_nonneg(3, Fraction(5, 6), grid_size=64)
        assert result.passed

    def test_rejects_hypothesis_violation(self):
        with pytest.raises(ValueError):
            check_wedge_fn_nonneg(2, Fraction(1, 4))


class TestLowerBound:
    def test_m2_theta1_first_order(self):
        result = check_lower_bound(2, 1, 1, 1)
        assert result.passed
        assert result.extremal_ratio >= 1

    def test_m3_theta1(self):
        assert check_lower_bound(3, 1, 1, 1).passed

    def test_m2_j4_reaches_k32(self):
        result = check_lower_bound(2, -1, 1, 4, table=get_table(2, 32))
        assert result.passed

    def test_rejects_non_integer_theta(self):
        with pytest.raises(ValueError):
            check_lower_bound(2, 1, Fraction(3, 2), 2)

    def test_rejects_undersized_table(self):
        from gsmult.derivpoly import build_coeff_table

        with pytest.raises(ValueError):
            check_lower_bound(2, 1, 1, 4, table=build_coeff_table(2, 8))

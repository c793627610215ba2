from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mp

from gsmult.derivpoly import (
    CoeffTable,
    build_coeff_table,
    default_precision_bits,
    derivative_poly,
    eval_log_magnitude,
    gaussian_parts,
    kj_sequence,
    row_length,
)
from gsmult.precision import PrecisionError

from conftest import get_table


class TestBuildCoeffTable:
    def test_row_k2_is_m_minus_1(self):
        assert get_table(2, 2).row(2) == (1, 1)
        for m in range(2, 9):
            assert build_coeff_table(m, 2).row(2) == (1, m - 1)

    def test_m3_row4(self):
        assert get_table(3, 4).row(4) == (1, 12, 20)

    def test_m2_row4_hermite_values(self):
        assert get_table(2, 4).row(4) == (1, 6, 3)

    def test_rejects_bad_m(self):
        with pytest.raises(ValueError):
            build_coeff_table(1, 5)
        with pytest.raises(ValueError):
            build_coeff_table(2, 0)

    @given(m=st.integers(2, 6), k=st.integers(1, 40))
    def test_row_length_and_index_bounds(self, m, k):
        table = get_table(m, 40)
        length = len(table.row(k))
        top = k * (m - 1) // m
        assert length == top + 1
        assert (k - 1) / 2 <= k // 2 <= top <= k - 1

    @given(m=st.integers(2, 6), k=st.integers(1, 30))
    def test_entries_positive_and_leading_one(self, m, k):
        row = get_table(m, 30).row(k)
        assert row[0] == 1
        assert all(c > 0 for c in row)

    def test_recursion_step_from_symbolic_row(self):
        # push row k through one symbolic application of
        # p_{k+1} = lam*x**(m-1)*p_k + p_k' and compare with row k+1
        for m in (2, 3, 5):
            table = get_table(m, 20)
            for k in range(1, 20):
                poly = {}
                for n, c in enumerate(table.row(k)):
                    poly[(k - n, (m - 1) * k - n * m)] = c
                nxt = {}
                for (a, b), c in poly.items():
                    key = (a + 1, b + m - 1)
                    nxt[key] = nxt.get(key, 0) + c
                    if b >= 1:
                        key = (a, b - 1)
                        nxt[key] = nxt.get(key, 0) + c * b
                rebuilt = {}
                for (a, b), c in nxt.items():
                    n = (k + 1) - a
                    assert b == (m - 1) * (k + 1) - n * m
                    rebuilt[n] = c
                expected = dict(enumerate(table.row(k + 1)))
                assert rebuilt == expected

    def test_json_round_trip(self):
        table = get_table(3, 12)
        clone = CoeffTable.from_json_dict(table.to_json_dict())
        assert clone == table

    def test_validate_rejects_corruption(self):
        table = get_table(2, 6)
        rows = [list(r) for r in table.rows]
        rows[3][1] = -rows[3][1]
        with pytest.raises(ValueError):
            CoeffTable(m=2, k_max=6, rows=tuple(tuple(r) for r in rows)).validate()


class TestDerivPoly:
    def test_k1_single_term(self):
        poly = derivative_poly(get_table(2, 4), 1)
        assert list(poly.terms()) == [(0, 1, 1, 1)]
        for m in (3, 5):
            poly = derivative_poly(get_table(m, 4), 1)
            assert list(poly.terms()) == [(0, 1, m - 1, 1)]

    def test_k0_constant(self):
        poly = derivative_poly(get_table(2, 4), 0)
        assert poly.coeffs == (1,)
        assert poly.degree == 0
        assert poly.exponent(0) == 0

    def test_m3_k3_structure(self):
        poly = derivative_poly(get_table(3, 4), 3)
        assert list(poly.terms()) == [(0, 3, 6, 1), (1, 2, 3, 6), (2, 1, 0, 2)]

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            derivative_poly(build_coeff_table(2, 4), 5)

    @given(m=st.integers(2, 6), k=st.integers(1, 40))
    def test_exponents_nonnegative_and_degree(self, m, k):
        poly = derivative_poly(get_table(m, 40), k)
        exps = [e for _, _, e, _ in poly.terms()]
        assert all(e >= 0 for e in exps)
        assert exps[0] == (m - 1) * k
        assert sorted(exps, reverse=True) == exps


class TestEvalLogMagnitude:
    def test_linear_term_exact(self):
        poly = derivative_poly(get_table(2, 4), 1)
        lm = eval_log_magnitude(poly, 1, 8)
        assert lm.exact
        assert mpmath.almosteq(mpmath.exp(lm.log_mag), 16)

    def test_k2_modulus_sqrt20(self):
        poly = derivative_poly(get_table(2, 4), 2)
        re, im = gaussian_parts(poly, 1, 1)
        assert (re, im) == (-4, 2)
        lm = eval_log_magnitude(poly, 1, 1, precision_bits=128)
        with mp.workprec(128):
            assert abs(lm.log_mag - mp.log(20) / 2) < mp.mpf(2) ** -100

    def test_k8_meets_half_power_lower_bound(self):
        poly = derivative_poly(get_table(2, 8), 8)
        for sign in (1, -1):
            re, im = gaussian_parts(poly, sign, 8)
            assert 4 * (re * re + im * im) >= 2**16 * 8**16

    def test_zero_value_exact(self):
        poly = derivative_poly(get_table(2, 4), 1)
        lm = eval_log_magnitude(poly, 1, 0)
        assert lm.exact and lm.log_mag == mpmath.mpf("-inf") and lm.arg is None

    def test_interval_path_rejects_exact_zero(self):
        poly = derivative_poly(get_table(2, 4), 1)
        with pytest.raises(PrecisionError):
            eval_log_magnitude(poly, 1, Fraction(0), precision_bits=128, exact=False)

    def test_rejects_bad_inputs(self):
        poly = derivative_poly(get_table(2, 4), 2)
        with pytest.raises(ValueError):
            eval_log_magnitude(poly, 2, 1)
        with pytest.raises(ValueError):
            eval_log_magnitude(poly, 1, -3)
        with pytest.raises(ValueError):
            eval_log_magnitude(poly, 1, 1, precision_bits=32)
        with pytest.raises(ValueError):
            eval_log_magnitude(poly, 1, Fraction(1, 3), exact=True)

    @pytest.mark.parametrize("m", [2, 3])
    @pytest.mark.parametrize("k", [5, 17, 40])
    @pytest.mark.parametrize("x", [1, 2, 7])
    def test_exact_float_agreement(self, m, k, x):
        poly = derivative_poly(get_table(m, 40), k)
        bits = default_precision_bits(m, k, 1) + 64
        exact = eval_log_magnitude(poly, 1, x, precision_bits=bits)
        boxed = eval_log_magnitude(poly, 1, Fraction(x), precision_bits=bits, exact=False)
        assert exact.exact and not boxed.exact
        with mp.workprec(bits):
            assert abs(exact.log_mag - boxed.log_mag) < mp.mpf(2) ** -32

    def test_fraction_with_unit_denominator_goes_exact(self):
        poly = derivative_poly(get_table(2, 4), 2)
        lm = eval_log_magnitude(poly, 1, Fraction(4))
        assert lm.exact


class TestKjSequence:
    def test_examples(self):
        assert kj_sequence(2, 1).k(1) == 8
        assert kj_sequence(3, 1).k(1) == 6
        assert kj_sequence(4, 2).k(2) == 11
        assert kj_sequence(2, 4).entries == (8, 16, 24, 32)

    @given(m=st.integers(2, 10), j=st.integers(1, 50))
    @settings(max_examples=200)
    def test_smallest_integer_in_interval(self, m, j):
        kj = kj_sequence(m, j).k(j)
        lower = Fraction(4 * j * m, m - 1)
        upper = Fraction((4 * j + 1) * m, m - 1)
        assert lower <= kj <= upper
        assert kj - 1 < lower  # smallest such integer
        floor_idx = kj * (m - 1) // m
        assert 4 * j <= floor_idx <= 4 * j + 1
        assert floor_idx // 2 == 2 * j

    def test_rejects_bad_args(self):
        with pytest.raises(ValueError):
            kj_sequence(1, 3)
        with pytest.raises(ValueError):
            kj_sequence(2, 0)
        with pytest.raises(ValueError):
            kj_sequence(2, 3).k(4)


def test_default_precision_bits_monotone():
    assert default_precision_bits(2, 1, 1) >= 64
    assert default_precision_bits(2, 50, 2) > default_precision_bits(2, 10, 2)
    assert default_precision_bits(6, 20, 1) > default_precision_bits(2, 20, 1)


def test_row_length_helper():
    assert row_length(2, 4) == 3
    assert row_length(3, 4) == 3
    assert row_length(2, 1) == 1

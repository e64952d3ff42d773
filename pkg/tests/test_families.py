"""Polynomial families and their closed-form coefficients, cross-checked
against the rewriting engine."""

import math

import pytest

from qweyl.families import (
    IndexOutOfRange,
    _xsd_power,
    a_coeff,
    apply_exp_q2,
    big_hermite,
    corollary2_coeff,
    corollary3_coeff,
    g_coeff,
    h_poly,
    hermite,
    hermite_lucas_expand,
    lucas,
    lucas_k,
    qweyl_binomial,
    weyl_binomial,
)
from qweyl.opalg import TWIST_Q, affine_factor, product
from qweyl.polyring import XSPoly
from qweyl.qarith import (
    IntPoly,
    ONE,
    QScalar,
    ZERO,
    eval_q,
    gauss_binomial,
    q_odd_double_factorial,
    q_pow,
    to_polynomial,
)

ONE_MINUS_Q = IntPoly([1, -1])


def oracle_qweyl_table(n):
    """Coefficient table of (X+sD)^n from the engine, keyed by (m, l) with
    the term X^(m-l) s^(n-m) D^(n-m-l)."""
    table = {}
    for (a, b, ms), c in _xsd_power(n).terms.items():
        m = n - ms
        l = m - a
        assert b == n - m - l
        table[(m, l)] = to_polynomial(c)
    return table


class TestHermite:
    def test_initial_values(self):
        assert hermite(0) == XSPoly.one()
        assert hermite(1) == XSPoly.x()
        assert hermite(2) == XSPoly({(2, 0): 1, (0, 1): 1})

    def test_degree_four(self):
        assert hermite(4) == XSPoly({(4, 0): 1, (2, 1): 6, (0, 2): 3})

    def test_closed_form(self):
        # n!/(2^j j! (n-2j)!) computed independently with integer arithmetic
        for n in range(11):
            expected = XSPoly({
                (n - 2 * j, j):
                    math.factorial(n) // ((1 << j) * math.factorial(j)
                                          * math.factorial(n - 2 * j))
                for j in range(n // 2 + 1)})
            assert hermite(n) == expected

    def test_derivative_recurrence(self):
        for n in range(1, 13):
            assert hermite(n).ddx() == n * hermite(n - 1)


class TestWeylBinomial:
    def test_j_zero_is_binomial(self):
        for n in range(9):
            for m in range(n + 1):
                assert weyl_binomial(n, m, 0) == math.comb(n, m)

    def test_examples(self):
        assert weyl_binomial(4, 2, 1) == 12
        assert weyl_binomial(4, 2, 2) == 3

    def test_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            weyl_binomial(4, 2, 3)
        with pytest.raises(IndexOutOfRange):
            weyl_binomial(4, 5, 0)
        with pytest.raises(IndexOutOfRange):
            weyl_binomial(4, 2, -1)

    def test_symmetry_and_factorization(self):
        for n in range(13):
            for m in range(n + 1):
                for j in range(min(m, n - m) + 1):
                    w = weyl_binomial(n, m, j)
                    assert w == weyl_binomial(n, n - m, j)
                    assert w == math.comb(n - 2 * j, m - j) * weyl_binomial(n, j, j)

    def test_hermite_coefficients(self):
        # s^j coefficient of H_n is {n j}_j
        for n in range(11):
            for j in range(n // 2 + 1):
                assert hermite(n).coefficient(n - 2 * j, j) == QScalar(weyl_binomial(n, j, j))


class TestHPoly:
    def test_small_values(self):
        assert h_poly(0) == XSPoly.one()
        assert h_poly(1) == XSPoly.x()
        assert h_poly(2) == XSPoly({(2, 0): 1, (0, 1): IntPoly([0, 1])})
        assert h_poly(3) == XSPoly({(3, 0): 1, (1, 1): IntPoly([0, 1, 1, 1])})

    def test_coefficient_identity(self):
        # the same coefficient written as q^(j^2) [n 2j] [2j-1]!!
        for n in range(11):
            for j in range(n // 2 + 1):
                expected = IntPoly.q_power(j * j) * gauss_binomial(n, 2 * j) \
                    * q_odd_double_factorial(j)
                assert h_poly(n).coefficient(n - 2 * j, j) == QScalar(expected)

    def test_generated_by_descending_product(self):
        for n in range(9):
            factors = [affine_factor(q_pow(n - 1 - i), TWIST_Q) for i in range(n)]
            assert product(factors).apply(XSPoly.one()) == h_poly(n)

    def test_section3_leading_factor_must_carry_q(self):
        # (X+qsD)(X+q^3 sD)...1 = h_n, while a leading (X+sD) already fails at n=2;
        # the odd-power product's first factor is (X + q s D).
        good = product([affine_factor(q_pow(1), TWIST_Q),
                        affine_factor(q_pow(3), TWIST_Q)])
        bad = product([affine_factor(1, TWIST_Q),
                       affine_factor(q_pow(3), TWIST_Q)])
        assert good.apply(XSPoly.one()) == h_poly(2)
        assert bad.apply(XSPoly.one()) != h_poly(2)


class TestApplyExpQ2:
    def test_constant(self):
        assert apply_exp_q2(XSPoly.one()) == XSPoly.one()

    def test_x_squared(self):
        assert apply_exp_q2(XSPoly.x(2)) == h_poly(2)

    def test_monomials_give_h(self):
        for n in range(9):
            assert apply_exp_q2(XSPoly.x(n)) == h_poly(n)


class TestGCoeff:
    def test_k_zero_reduces_to_h(self):
        for n in range(7):
            assert g_coeff(n, 0) == h_poly(n)

    def test_f2_coefficients(self):
        assert g_coeff(2, 1) == XSPoly.monomial(1, 0, IntPoly([1, 0, 1]))
        assert g_coeff(2, 2) == XSPoly.const(IntPoly([0, 1]))

    def test_against_pair_oracle(self):
        f2 = affine_factor(q_pow(1), TWIST_Q) * affine_factor(1, TWIST_Q)
        assert f2.terms[(1, 1, 1)] == QScalar(IntPoly([1, 0, 1]))  # g_2(1)·s·D
        assert f2.terms[(0, 2, 2)] == QScalar(IntPoly([0, 1]))     # g_2(2)·s^2·D^2

    def test_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            g_coeff(2, 3)
        with pytest.raises(IndexOutOfRange):
            g_coeff(2, -1)


class TestCorollaryCoeffs:
    def test_pure_x_term(self):
        for n in range(1, 8):
            assert corollary2_coeff(n, n, 0) == QScalar(1)
            assert corollary3_coeff(n, n, 0) == QScalar(1)

    def test_n2_values(self):
        assert corollary2_coeff(2, 1, 0) == QScalar(IntPoly([1, 0, 1]))
        assert corollary2_coeff(2, 0, 0) == QScalar(IntPoly([0, 1]))
        assert corollary3_coeff(2, 1, 0) == QScalar(IntPoly([0, 0, 1, 1]))
        assert corollary3_coeff(2, 0, 0) == QScalar(IntPoly([0, 0, 0, 0, 1]))

    def test_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            corollary2_coeff(2, 1, 2)
        with pytest.raises(IndexOutOfRange):
            corollary3_coeff(2, 3, 0)


class TestBigHermite:
    def test_small_values(self):
        assert big_hermite(0) == XSPoly.one()
        assert big_hermite(1) == XSPoly.x()
        assert big_hermite(2) == XSPoly({(2, 0): 1, (0, 1): 1})
        assert big_hermite(3) == XSPoly({(3, 0): 1, (1, 1): IntPoly([2, 1])})


class TestLucas:
    def test_golden_values(self):
        assert lucas(0) == XSPoly.one()
        assert lucas(1) == XSPoly.x()
        assert lucas(2) == XSPoly({(2, 0): 1, (0, 1): IntPoly([1, 1])})
        assert lucas(3) == XSPoly({(3, 0): 1, (1, 1): IntPoly([1, 1, 1])})
        assert lucas(4) == XSPoly({(4, 0): 1, (2, 1): IntPoly([1, 1, 1, 1]),
                                   (0, 2): IntPoly([0, 1, 0, 1])})


class TestLucasK:
    def test_k_zero(self):
        for n in range(9):
            assert lucas_k(n, 0) == lucas(n)

    def test_n_zero(self):
        for k in range(5):
            assert lucas_k(0, k) == XSPoly.one()

    def test_example(self):
        assert lucas_k(1, 1) == XSPoly.monomial(1, 0, IntPoly([1, 1]))


class TestACoeff:
    def test_diagonal(self):
        for n in range(7):
            assert a_coeff(n, n) == XSPoly.one()

    def test_example(self):
        assert a_coeff(2, 1) == XSPoly.monomial(1, 0, IntPoly([1, 1]))

    def test_k_zero_matches_expansion(self):
        for n in range(9):
            assert a_coeff(n, 0) == hermite_lucas_expand(n)

    def test_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            a_coeff(2, 3)


class TestHermiteLucasExpand:
    def test_small_values(self):
        assert hermite_lucas_expand(0) == XSPoly.one()
        assert hermite_lucas_expand(1) == XSPoly.x()
        assert hermite_lucas_expand(2) == XSPoly({(2, 0): 1, (0, 1): ONE_MINUS_Q})

    def test_matches_scaled_big_hermite(self):
        for n in range(9):
            assert hermite_lucas_expand(n) == big_hermite(n).scale_s(ONE_MINUS_Q)


class TestQWeylBinomial:
    def test_examples(self):
        for n in range(7):
            assert qweyl_binomial(n, 0, 0) == ONE
        assert qweyl_binomial(2, 1, 0) == IntPoly([1, 1])
        assert qweyl_binomial(4, 2, 1) == IntPoly([3, 5, 3, 1])

    def test_zero_outside_range(self):
        assert qweyl_binomial(4, 2, 3) == ZERO
        assert qweyl_binomial(4, 5, 0) == ZERO
        assert qweyl_binomial(4, 2, -1) == ZERO

    def test_unknown_path(self):
        with pytest.raises(ValueError):
            qweyl_binomial(2, 1, 0, path="magic")

    def test_paths_agree(self):
        for n in range(9):
            for m in range(n + 1):
                for l in range(min(m, n - m) + 1):
                    closed = qweyl_binomial(n, m, l, "closed")
                    assert closed == qweyl_binomial(n, m, l, "factored")
                    assert closed == qweyl_binomial(n, m, l, "recurrence")

    def test_oracle_supremacy(self):
        # every engine coefficient of (X+sD)^n equals the closed form
        for n in range(9):
            table = oracle_qweyl_table(n)
            for m in range(n + 1):
                for l in range(min(m, n - m) + 1):
                    assert table.get((m, l), ZERO) == qweyl_binomial(n, m, l)

    def test_symmetry_reconciles_both_index_displays(self):
        # the two index conventions differ by m <-> n-m; the values coincide
        for n in range(9):
            for m in range(n + 1):
                for l in range(min(m, n - m) + 1):
                    assert qweyl_binomial(n, m, l) == qweyl_binomial(n, n - m, l)

    def test_q1_collapse(self):
        for n in range(9):
            for m in range(n + 1):
                for l in range(min(m, n - m) + 1):
                    value = eval_q(QScalar(qweyl_binomial(n, m, l)), 1)
                    assert value == weyl_binomial(n, m, l)

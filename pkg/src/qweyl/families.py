"""Polynomial families and closed-form normal-ordering coefficients.

Every family here has at least one independent route to the same values --
a defining recurrence, a closed sum, a generating-operator product -- and the
verification harness cross-checks them against the rewriting engine, which
is the ground truth.  All internal divisions (bracket ratios, (1+q^i)
ratios, the 1/(1-q)^l prefactor) run in the QScalar field and are converted
with to_polynomial at the end, so any transcription slip surfaces as a
NotPolynomial error instead of a silently wrong value.
"""

from __future__ import annotations

import math
from functools import lru_cache

from .opalg import TWIST_Q, NormalOp, affine_factor
from .polyring import XSPoly
from .qarith import (
    IntPoly,
    ONE,
    QScalar,
    ZERO,
    gauss_binomial,
    q_even_product,
    q_factorial,
    q_integer,
    q_odd_double_factorial,
    q_pow,
    to_polynomial,
)

ONE_MINUS_Q = IntPoly([1, -1])


class IndexOutOfRange(ValueError):
    """An index lies outside the stated domain of a coefficient family."""


@lru_cache(maxsize=None)
def hermite(n: int) -> XSPoly:
    """Hermite variant by the three-term recurrence
    H_n = x H_(n-1) + (n-1) s H_(n-2), H_0 = 1, H_1 = x.  Coefficients are
    plain integers (q-free)."""
    if n < 0:
        raise ValueError("hermite requires n >= 0")
    if n == 0:
        return XSPoly.one()
    if n == 1:
        return XSPoly.x()
    return hermite(n - 1).shift(1, 0) + (n - 1) * hermite(n - 2).shift(0, 1)


def weyl_binomial(n: int, m: int, j: int) -> int:
    """Weyl binomial n!/(2^j j! (m-j)! (n-m-j)!), the classical
    normal-ordering coefficient of X^(m-j) s^(n-m) D^(n-m-j)."""
    if n < 0:
        raise ValueError("weyl_binomial requires n >= 0")
    if j < 0 or j > min(m, n - m):
        raise IndexOutOfRange(f"need 0 <= j <= min(m, n-m), got (n,m,j)=({n},{m},{j})")
    den = (1 << j) * math.factorial(j) * math.factorial(m - j) * math.factorial(n - m - j)
    quot, rem = divmod(math.factorial(n), den)
    assert rem == 0
    return quot


@lru_cache(maxsize=None)
def h_poly(n: int) -> XSPoly:
    """Discrete q-Hermite variant h_n, by its closed sum:
    sum_j q^(j^2) s^j [n]! / ((1+q)...(1+q^j) [j]! [n-2j]!) x^(n-2j)."""
    if n < 0:
        raise ValueError("h_poly requires n >= 0")
    terms = {}
    for j in range(n // 2 + 1):
        num = QScalar(IntPoly.q_power(j * j) * q_factorial(n))
        den = QScalar(q_even_product(j) * q_factorial(j) * q_factorial(n - 2 * j))
        terms[(n - 2 * j, j)] = to_polynomial(num / den)
    return XSPoly(terms)


def apply_exp_q2(p: XSPoly) -> XSPoly:
    """The truncated exponential-series action
    sum_(j>=0) q^(j^2) s^j / ((1+q)...(1+q^j) [j]!) dq^(2j)(p);
    finite because dq^(2j) annihilates degrees below 2j.
    Sends x^n to h_n."""
    result = XSPoly.zero()
    deriv = p
    j = 0
    while not deriv.is_zero():
        coef = QScalar(IntPoly.q_power(j * j)) / QScalar(q_even_product(j) * q_factorial(j))
        result = result + deriv.shift(0, j, coef)
        deriv = deriv.dq().dq()
        j += 1
    return result


def g_coeff(n: int, k: int) -> XSPoly:
    """Coefficient polynomial g_n(k, x, s) of s^k D^k in the descending-power
    product (X + q^(n-1) s D)...(X + s D):

    [n k] sum_j s^j q^(j^2+kj+C(k,2)) [n-k 2j] [2j-1]!!
          prod_(i=0..k-1) (1+q^(n-j-i))/(1+q^(j+1+i)) x^(n-k-2j).

    Reduces to h_n at k = 0."""
    if n < 0 or k < 0 or k > n:
        raise IndexOutOfRange(f"need 0 <= k <= n, got (n,k)=({n},{k})")
    outer = QScalar(gauss_binomial(n, k))
    terms = {}
    for j in range((n - k) // 2 + 1):
        c = outer * q_pow(j * j + k * j + math.comb(k, 2))
        c = c * gauss_binomial(n - k, 2 * j) * q_odd_double_factorial(j)
        for i in range(k):
            c = c * QScalar(ONE + IntPoly.q_power(n - j - i),
                            ONE + IntPoly.q_power(j + 1 + i))
        terms[(n - k - 2 * j, j)] = to_polynomial(c)
    return XSPoly(terms)


def corollary2_coeff(n: int, m: int, j: int) -> QScalar:
    """Coefficient of X^(m-j) D^(n-m-j) (with weight s^(n-m)) in the
    descending-power product, in fully expanded form:

    q^(C(j+1,2)+C(n-m,2)) (1+q^(m+1))...(1+q^(n-j)) [n]!
      / ((1+q)...(1+q^(n-m)) [j]! [m-j]! [n-m-j]!)."""
    if n < 0 or j < 0 or j > min(m, n - m):
        raise IndexOutOfRange(f"need 0 <= j <= min(m, n-m), got (n,m,j)=({n},{m},{j})")
    c = q_pow(math.comb(j + 1, 2) + math.comb(n - m, 2)) * q_factorial(n)
    for e in range(m + 1, n - j + 1):
        c = c * (ONE + IntPoly.q_power(e))
    den = q_even_product(n - m) * q_factorial(j) * q_factorial(m - j) \
        * q_factorial(n - m - j)
    return c / QScalar(den)


def corollary3_coeff(n: int, m: int, j: int) -> QScalar:
    """Coefficient of X^(m-j) D^(n-m-j) (with weight s^(n-m)) in the
    odd-power product (X+qsD)(X+q^3 sD)...(X+q^(2n-1) sD):

    q^(n^2+j^2-(m+j)n) [n]! / ((1+q)...(1+q^j) [j]! [m-j]! [n-m-j]!)."""
    if n < 0 or j < 0 or j > min(m, n - m):
        raise IndexOutOfRange(f"need 0 <= j <= min(m, n-m), got (n,m,j)=({n},{m},{j})")
    c = q_pow(n * n + j * j - (m + j) * n) * q_factorial(n)
    den = q_even_product(j) * q_factorial(j) * q_factorial(m - j) \
        * q_factorial(n - m - j)
    return c / QScalar(den)


@lru_cache(maxsize=None)
def _xsd_power(n: int) -> NormalOp:
    if n == 0:
        return NormalOp.identity(TWIST_Q)
    return _xsd_power(n - 1) * affine_factor(1, TWIST_Q)


@lru_cache(maxsize=None)
def big_hermite(n: int) -> XSPoly:
    """q-Hermite variant H_n(x, s | q) = (X + sD)^n 1, computed by the
    rewriting engine."""
    if n < 0:
        raise ValueError("big_hermite requires n >= 0")
    return _xsd_power(n).apply(XSPoly.one())


def _lucas_coeff(n: int, k: int) -> IntPoly:
    """Coefficient of s^k x^(n-2k) in L_n for n > 0:
    q^(C(k,2)) ([n]/[n-k]) [n-k k], made exact via to_polynomial."""
    ratio = QScalar(q_integer(n), q_integer(n - k)) * gauss_binomial(n - k, k)
    return IntPoly.q_power(math.comb(k, 2)) * to_polynomial(ratio)


@lru_cache(maxsize=None)
def lucas(n: int) -> XSPoly:
    """q-Lucas polynomial L_n, with L_0 = 1."""
    if n < 0:
        raise ValueError("lucas requires n >= 0")
    if n == 0:
        return XSPoly.one()
    return XSPoly({(n - 2 * k, k): _lucas_coeff(n, k) for k in range(n // 2 + 1)})


@lru_cache(maxsize=None)
def lucas_k(n: int, k: int) -> XSPoly:
    """Generalized q-Lucas polynomial L_n^(k):
    sum_j q^(C(j,2)) ([n+k]/[n+k-j]) [n+k-j k] [n-j j] s^j x^(n-2j),
    with L_0^(k) = 1.  lucas_k(n, 0) equals lucas(n)."""
    if n < 0 or k < 0:
        raise ValueError("lucas_k requires n, k >= 0")
    if n == 0:
        return XSPoly.one()
    terms = {}
    for j in range(n // 2 + 1):
        ratio = QScalar(q_integer(n + k), q_integer(n + k - j)) \
            * gauss_binomial(n + k - j, k) * gauss_binomial(n - j, j)
        terms[(n - 2 * j, j)] = IntPoly.q_power(math.comb(j, 2)) * to_polynomial(ratio)
    return XSPoly(terms)


def a_coeff(n: int, k: int) -> XSPoly:
    """A(n, k, x) = sum_i C(n, i) s^i L^(k)_(n-2i-k)(x, -s), the coefficient
    of (1-q)^k s^k D^k in the expansion of (X + (1-q) s D)^n.  The binomial
    here is the ordinary one."""
    if n < 0 or k < 0 or k > n:
        raise IndexOutOfRange(f"need 0 <= k <= n, got (n,k)=({n},{k})")
    result = XSPoly.zero()
    for i in range((n - k) // 2 + 1):
        result = result + lucas_k(n - 2 * i - k, k).scale_s(-1).shift(0, i, math.comb(n, i))
    return result


def hermite_lucas_expand(n: int) -> XSPoly:
    """sum_j C(n, j) s^j L_(n-2j)(x, -s); equals big_hermite(n) with s
    replaced by (1-q)s.  Ordinary binomials."""
    if n < 0:
        raise ValueError("hermite_lucas_expand requires n >= 0")
    result = XSPoly.zero()
    for j in range(n // 2 + 1):
        result = result + lucas(n - 2 * j).scale_s(-1).shift(0, j, math.comb(n, j))
    return result


def _lucas_k_term(n_idx: int, k: int, j: int) -> QScalar:
    """Coefficient of s^j x^(n_idx-2j) in L^(k)_(n_idx); honors the
    L_0^(k) = 1 initial value (resolving the formal 0/0 at n_idx = 0, k = 0)."""
    if n_idx < 0 or j < 0 or 2 * j > n_idx:
        return QScalar(0)
    if n_idx == 0:
        return QScalar(1) if j == 0 else QScalar(0)
    ratio = QScalar(q_integer(n_idx + k), q_integer(n_idx + k - j))
    return q_pow(math.comb(j, 2)) * ratio \
        * gauss_binomial(n_idx + k - j, k) * gauss_binomial(n_idx - j, j)


def _qweyl_closed_sum(n: int, m: int, l: int) -> QScalar:
    """The alternating binomial sum for the q-Weyl binomial, before the
    1/(1-q)^l prefactor."""
    total = QScalar(0)
    for i in range(l + 1):
        sign = -1 if (l - i) % 2 else 1
        term = _lucas_k_term(n - 2 * i - (m - l), m - l, l - i)
        total = total + sign * math.comb(n, i) * term
    return total


def _qweyl_closed(n: int, m: int, l: int) -> IntPoly:
    prefactor = QScalar(ONE, ONE_MINUS_Q ** l)
    return to_polynomial(prefactor * _qweyl_closed_sum(n, m, l))


def _qweyl_diagonal(n: int, l: int) -> IntPoly:
    """The m = l special case, from which the general coefficient factors."""
    total = QScalar(0)
    for i in range(l + 1):
        sign = -1 if (l - i) % 2 else 1
        term = _lucas_k_term(n - 2 * i, 0, l - i)
        total = total + sign * math.comb(n, i) * term
    return to_polynomial(QScalar(ONE, ONE_MINUS_Q ** l) * total)


_QWEYL_ROWS: list[dict[tuple[int, int], IntPoly]] = [{(0, 0): ONE}]


def _qweyl_row(n: int) -> dict[tuple[int, int], IntPoly]:
    """Row n of the q-Weyl triangle by the three-term recurrence

    {n+1 m}_l = {n m-1}_l + [m+1-l] {n m}_(l-1) + q^(m-l) {n m}_l

    with {0 0}_0 = 1 and zero outside the triangle."""
    while len(_QWEYL_ROWS) <= n:
        r = len(_QWEYL_ROWS)
        prev = _QWEYL_ROWS[r - 1]
        row: dict[tuple[int, int], IntPoly] = {}
        for m in range(r + 1):
            for l in range(min(m, r - m) + 1):
                val = prev.get((m - 1, l), ZERO) \
                    + q_integer(m + 1 - l) * prev.get((m, l - 1), ZERO) \
                    + IntPoly.q_power(m - l) * prev.get((m, l), ZERO)
                if not val.is_zero():
                    row[(m, l)] = val
        _QWEYL_ROWS.append(row)
    return _QWEYL_ROWS[n]


QWEYL_PATHS = ("closed", "factored", "recurrence")


def qweyl_binomial(n: int, m: int, l: int, path: str = "closed") -> IntPoly:
    """q-Weyl binomial: the coefficient of X^(m-l) s^(n-m) D^(n-m-l) in
    (X + sD)^n.  Zero outside 0 <= l <= min(m, n-m).

    Three independent computation paths must agree:
      closed     -- the alternating binomial sum with the 1/(1-q)^l prefactor;
      factored   -- Gaussian binomial times the m = l diagonal value;
      recurrence -- the memoized three-term-recurrence triangle.
    """
    if n < 0:
        raise ValueError("qweyl_binomial requires n >= 0")
    if l < 0 or m < 0 or m > n or l > min(m, n - m):
        return ZERO
    if path == "closed":
        return _qweyl_closed(n, m, l)
    if path == "factored":
        return gauss_binomial(n - 2 * l, m - l) * _qweyl_diagonal(n, l)
    if path == "recurrence":
        return _qweyl_row(n).get((m, l), ZERO)
    raise ValueError(f"unknown path {path!r}; expected one of {QWEYL_PATHS}")

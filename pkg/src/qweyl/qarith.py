"""Exact arithmetic in Z[q] and its fraction field.

Everything downstream (polynomials in x and s, operator coefficients) is
built on two value types defined here:

  IntPoly  -- a univariate polynomial in q with arbitrary-precision integer
              coefficients, stored as an ascending coefficient tuple with the
              trailing (leading) zeros stripped.  The zero polynomial is the
              empty tuple.
  QScalar  -- a fraction num/den of two IntPoly values kept in canonical
              form: gcd(num, den) = 1 in Z[q] (integer content and polynomial
              part both removed) and den has positive leading coefficient.
              Canonical form makes == structural, so values can be compared
              and hashed directly.

No floating point is used anywhere; point evaluation returns Fraction.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union


class NotPolynomial(ValueError):
    """A quantity claimed to be a polynomial in q has a nontrivial denominator."""


class PoleAtPoint(ZeroDivisionError):
    """The denominator of a rational function vanishes at the evaluation point."""


def _strip(coeffs: Sequence[int]) -> tuple[int, ...]:
    n = len(coeffs)
    while n > 0 and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


class IntPoly:
    """Polynomial in q over the integers; immutable."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        object.__setattr__(self, "coeffs", _strip(tuple(int(c) for c in coeffs)))

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    @classmethod
    def const(cls, c: int) -> "IntPoly":
        return cls((c,))

    @classmethod
    def q_power(cls, k: int) -> "IntPoly":
        if k < 0:
            raise ValueError("q_power requires a nonnegative exponent")
        return cls((0,) * k + (1,))

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree, with the convention degree(0) = -1."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        if not self.coeffs:
            return 0
        return self.coeffs[-1]

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntPoly.const(other)
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __neg__(self) -> "IntPoly":
        return IntPoly(tuple(-c for c in self.coeffs))

    def __add__(self, other) -> "IntPoly":
        if isinstance(other, int):
            other = IntPoly.const(other)
        if not isinstance(other, IntPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly(out)

    __radd__ = __add__

    def __sub__(self, other) -> "IntPoly":
        if isinstance(other, int):
            other = IntPoly.const(other)
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "IntPoly":
        return (-self) + other

    def __mul__(self, other) -> "IntPoly":
        if isinstance(other, int):
            other = IntPoly.const(other)
        if not isinstance(other, IntPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "IntPoly":
        if n < 0:
            raise ValueError("IntPoly power must be nonnegative")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def evaluate(self, r: Union[int, Fraction]) -> Fraction:
        """Exact value at q = r (Horner)."""
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * r + c
        return acc

    def content(self) -> int:
        """Nonnegative gcd of the coefficients; 0 for the zero polynomial."""
        g = 0
        for c in self.coeffs:
            g = math.gcd(g, c)
        return g

    def to_list(self) -> list[int]:
        """Ascending coefficient list, the wire format."""
        return list(self.coeffs)

    def __repr__(self) -> str:
        return f"IntPoly({list(self.coeffs)!r})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        pieces = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                head = "" if mag == 1 else str(mag)
                body = head + ("q" if i == 1 else f"q^{i}")
            if not pieces:
                pieces.append(("-" if c < 0 else "") + body)
            else:
                pieces.append(("-" if c < 0 else "+") + body)
        return "".join(pieces)


ZERO = IntPoly()
ONE = IntPoly((1,))
Q = IntPoly((0, 1))


def _divexact(a: IntPoly, b: IntPoly) -> IntPoly:
    """Quotient a/b when b divides a in Z[q]; raises NotPolynomial otherwise.

    Top-down synthetic division: when the true quotient lies in Z[q], every
    step's leading-coefficient ratio is one of its (integer) coefficients.
    """
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if a.is_zero():
        return ZERO
    if a.degree < b.degree:
        raise NotPolynomial(f"({a})/({b}) is not a polynomial")
    rem = list(a.coeffs)
    db, lb = b.degree, b.lead
    quot = [0] * (a.degree - db + 1)
    for i in reversed(range(len(quot))):
        c = rem[i + db]
        if c % lb != 0:
            raise NotPolynomial(f"({a})/({b}) is not a polynomial")
        t = c // lb
        quot[i] = t
        if t:
            for j, bc in enumerate(b.coeffs):
                rem[i + j] -= t * bc
    if any(rem):
        raise NotPolynomial(f"({a})/({b}) is not a polynomial")
    return IntPoly(quot)


def _pseudo_rem(a: IntPoly, b: IntPoly) -> IntPoly:
    """Pseudo-remainder of a by b (b nonzero): stays in Z[q]."""
    r = list(a.coeffs)
    db, lb = b.degree, b.lead
    while len(r) - 1 >= db and r:
        lr = r[-1]
        r = [lb * c for c in r]
        dr = len(r) - 1
        for j, bc in enumerate(b.coeffs):
            r[dr - db + j] -= lr * bc
        while r and r[-1] == 0:
            r.pop()
    return IntPoly(r)


def _primitive(a: IntPoly) -> IntPoly:
    """Primitive part with positive leading coefficient."""
    if a.is_zero():
        return ZERO
    c = a.content()
    if a.lead < 0:
        c = -c
    return IntPoly(tuple(x // c for x in a.coeffs))


def poly_gcd(a: IntPoly, b: IntPoly) -> IntPoly:
    """gcd in Z[q] (content included), normalized to positive leading coefficient."""
    if a.is_zero():
        return _primitive(b) * b.content() if not b.is_zero() else ZERO
    if b.is_zero():
        return _primitive(a) * a.content()
    c = math.gcd(a.content(), b.content())
    pa, pb = _primitive(a), _primitive(b)
    while not pb.is_zero():
        pa, pb = pb, _primitive(_pseudo_rem(pa, pb))
    return pa * c


class QScalar:
    """Element of the field of rational functions in q, in canonical form."""

    __slots__ = ("num", "den")

    def __init__(self, num: Union[int, IntPoly], den: Union[int, IntPoly] = ONE):
        num = IntPoly.const(num) if isinstance(num, int) else num
        den = IntPoly.const(den) if isinstance(den, int) else den
        if den.is_zero():
            raise ZeroDivisionError("QScalar denominator is zero")
        if num.is_zero():
            num, den = ZERO, ONE
        elif den != ONE:
            g = poly_gcd(num, den)
            if g != ONE:
                num = _divexact(num, g)
                den = _divexact(den, g)
            if den.lead < 0:
                num, den = -num, -den
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("QScalar is immutable")

    @classmethod
    def _raw(cls, num: IntPoly, den: IntPoly) -> "QScalar":
        """Bypass reduction for inputs already known canonical."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "num", num)
        object.__setattr__(obj, "den", den)
        return obj

    @classmethod
    def from_fraction(cls, f: Fraction) -> "QScalar":
        return cls(IntPoly.const(f.numerator), IntPoly.const(f.denominator))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def _coerce(self, other):
        if isinstance(other, QScalar):
            return other
        if isinstance(other, int):
            return QScalar._raw(IntPoly.const(other), ONE)
        if isinstance(other, IntPoly):
            return QScalar._raw(other, ONE)
        return None

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num.coeffs, self.den.coeffs))

    def __neg__(self) -> "QScalar":
        return QScalar._raw(-self.num, self.den)

    def __add__(self, other) -> "QScalar":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.den == ONE and other.den == ONE:
            return QScalar._raw(self.num + other.num, ONE)
        return QScalar(self.num * other.den + other.num * self.den,
                       self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other) -> "QScalar":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "QScalar":
        return (-self) + other

    def __mul__(self, other) -> "QScalar":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.den == ONE and other.den == ONE:
            return QScalar._raw(self.num * other.num, ONE)
        return QScalar(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "QScalar":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero QScalar")
        return QScalar(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "QScalar":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, n: int) -> "QScalar":
        if n < 0:
            return QSCALAR_ONE / (self ** (-n))
        # canonical form is preserved: coprimality and the den sign survive powers
        return QScalar._raw(self.num ** n, self.den ** n)

    def evaluate(self, r: Union[int, Fraction]) -> Fraction:
        """Exact rational value at q = r; PoleAtPoint if the denominator vanishes."""
        d = self.den.evaluate(r)
        if d == 0:
            raise PoleAtPoint(f"denominator {self.den} vanishes at q = {r}")
        return self.num.evaluate(r) / d

    def to_json(self) -> dict:
        return {"num": self.num.to_list(), "den": self.den.to_list()}

    @classmethod
    def from_json(cls, data: dict) -> "QScalar":
        return cls(IntPoly(data["num"]), IntPoly(data["den"]))

    def __repr__(self) -> str:
        return f"QScalar({list(self.num.coeffs)!r}, {list(self.den.coeffs)!r})"

    def __str__(self) -> str:
        if self.den == ONE:
            return str(self.num)
        return f"({self.num})/({self.den})"


QSCALAR_ZERO = QScalar._raw(ZERO, ONE)
QSCALAR_ONE = QScalar._raw(ONE, ONE)
QSCALAR_Q = QScalar._raw(Q, ONE)


def q_pow(e: int) -> QScalar:
    """q^e as a QScalar, for any integer e (negative exponents allowed)."""
    if e >= 0:
        return QScalar._raw(IntPoly.q_power(e), ONE)
    return QScalar._raw(ONE, IntPoly.q_power(-e))


def q_integer(n: int) -> IntPoly:
    """[n] = 1 + q + ... + q^(n-1); [0] = 0.  Evaluates to n at q = 1."""
    if n < 0:
        raise ValueError("q_integer requires n >= 0")
    return IntPoly((1,) * n)


def q_factorial(n: int) -> IntPoly:
    """[n]! = [1][2]...[n]; empty product 1."""
    if n < 0:
        raise ValueError("q_factorial requires n >= 0")
    result = ONE
    for i in range(1, n + 1):
        result = result * q_integer(i)
    return result


_GAUSS_ROWS: list[list[IntPoly]] = [[ONE]]


def gauss_binomial(n: int, k: int) -> IntPoly:
    """Gaussian binomial [n k] = [n]!/([k]![n-k]!); 0 when k < 0 or k > n.

    Built by the q-Pascal recurrence [n k] = [n-1 k-1] + q^k [n-1 k] so all
    intermediate values stay in Z[q].
    """
    if n < 0:
        raise ValueError("gauss_binomial requires n >= 0")
    if k < 0 or k > n:
        return ZERO
    while len(_GAUSS_ROWS) <= n:
        m = len(_GAUSS_ROWS)
        prev = _GAUSS_ROWS[m - 1]
        row = [ONE]
        for j in range(1, m):
            row.append(prev[j - 1] + IntPoly.q_power(j) * prev[j])
        row.append(ONE)
        _GAUSS_ROWS.append(row)
    return _GAUSS_ROWS[n][k]


def q_odd_double_factorial(j: int) -> IntPoly:
    """[2j-1]!! = [1][3]...[2j-1]; empty product 1."""
    if j < 0:
        raise ValueError("q_odd_double_factorial requires j >= 0")
    result = ONE
    for i in range(1, j + 1):
        result = result * q_integer(2 * i - 1)
    return result


def q_even_product(j: int) -> IntPoly:
    """(1+q)(1+q^2)...(1+q^j); empty product 1."""
    if j < 0:
        raise ValueError("q_even_product requires j >= 0")
    result = ONE
    for i in range(1, j + 1):
        result = result * (ONE + IntPoly.q_power(i))
    return result


def to_polynomial(a: QScalar) -> IntPoly:
    """The IntPoly equal to a, when its canonical denominator is 1.

    Raises NotPolynomial otherwise; downstream this signals that a formula
    whose value must lie in Z[q] was transcribed wrongly.
    """
    if a.den != ONE:
        raise NotPolynomial(f"{a} is not a polynomial in q")
    return a.num


def eval_q(a: Union[QScalar, IntPoly], r: Union[int, Fraction]) -> Fraction:
    """Exact evaluation of a at q = r; raises PoleAtPoint on a vanishing denominator."""
    return a.evaluate(r)

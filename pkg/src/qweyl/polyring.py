"""Polynomials in x and s over the rational-function scalars.

XSPoly is a sparse map from exponent pairs (x-degree, s-degree) to QScalar,
with zero coefficients never stored.  The q-derivative and the classical
derivative act in x only; s is a passive parameter throughout.  The
q-derivative is defined on the monomial basis, x^a -> [a] x^(a-1), so that
specializing q = 1 is total (the difference quotient would be 0/0 there).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Union

from .qarith import (
    IntPoly,
    QScalar,
    QSCALAR_ONE,
    QSCALAR_ZERO,
    q_integer,
    q_pow,
)

Key = tuple[int, int]

ScalarLike = Union[QScalar, IntPoly, int]


def _scalar(c: ScalarLike) -> QScalar:
    if isinstance(c, QScalar):
        return c
    if isinstance(c, IntPoly):
        return QScalar(c)
    return QScalar(int(c))


class XSPoly:
    """Polynomial in x and s with QScalar coefficients; immutable by convention."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Key, ScalarLike] = ()):
        clean: dict[Key, QScalar] = {}
        for (a, b), c in dict(terms).items():
            if a < 0 or b < 0:
                raise ValueError("exponents must be nonnegative")
            c = _scalar(c)
            if not c.is_zero():
                clean[(a, b)] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("XSPoly is immutable")

    @classmethod
    def zero(cls) -> "XSPoly":
        return cls()

    @classmethod
    def one(cls) -> "XSPoly":
        return cls({(0, 0): QSCALAR_ONE})

    @classmethod
    def x(cls, a: int = 1) -> "XSPoly":
        return cls({(a, 0): QSCALAR_ONE})

    @classmethod
    def s(cls, b: int = 1) -> "XSPoly":
        return cls({(0, b): QSCALAR_ONE})

    @classmethod
    def monomial(cls, a: int, b: int, coef: ScalarLike = 1) -> "XSPoly":
        return cls({(a, b): coef})

    @classmethod
    def const(cls, c: ScalarLike) -> "XSPoly":
        return cls({(0, 0): c})

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, a: int, b: int) -> QScalar:
        return self.terms.get((a, b), QSCALAR_ZERO)

    def x_degree(self) -> int:
        """Highest x exponent; -1 for the zero polynomial."""
        return max((a for a, _ in self.terms), default=-1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, XSPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __neg__(self) -> "XSPoly":
        return XSPoly({k: -c for k, c in self.terms.items()})

    def __add__(self, other) -> "XSPoly":
        if not isinstance(other, XSPoly):
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, QSCALAR_ZERO) + c
        return XSPoly(out)

    def __sub__(self, other) -> "XSPoly":
        if not isinstance(other, XSPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other) -> "XSPoly":
        if isinstance(other, (QScalar, IntPoly, int)):
            return self.scale(other)
        if not isinstance(other, XSPoly):
            return NotImplemented
        out: dict[Key, QScalar] = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                k = (a1 + a2, b1 + b2)
                out[k] = out.get(k, QSCALAR_ZERO) + c1 * c2
        return XSPoly(out)

    def __rmul__(self, other) -> "XSPoly":
        if isinstance(other, (QScalar, IntPoly, int)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int) -> "XSPoly":
        if n < 0:
            raise ValueError("XSPoly power must be nonnegative")
        result = XSPoly.one()
        for _ in range(n):
            result = result * self
        return result

    def scale(self, c: ScalarLike) -> "XSPoly":
        c = _scalar(c)
        if c.is_zero():
            return XSPoly.zero()
        return XSPoly({k: v * c for k, v in self.terms.items()})

    def shift(self, dx: int, ds: int, coef: ScalarLike = 1) -> "XSPoly":
        """Multiply by coef * x^dx * s^ds."""
        coef = _scalar(coef)
        if coef.is_zero():
            return XSPoly.zero()
        return XSPoly({(a + dx, b + ds): c * coef for (a, b), c in self.terms.items()})

    def dq(self) -> "XSPoly":
        """q-derivative in x: x^a s^b -> [a] x^(a-1) s^b, extended linearly."""
        out: dict[Key, QScalar] = {}
        for (a, b), c in self.terms.items():
            if a == 0:
                continue
            k = (a - 1, b)
            out[k] = out.get(k, QSCALAR_ZERO) + c * QScalar(q_integer(a))
        return XSPoly(out)

    def ddx(self) -> "XSPoly":
        """Classical derivative in x; equals dq with q specialized to 1."""
        out: dict[Key, QScalar] = {}
        for (a, b), c in self.terms.items():
            if a == 0:
                continue
            k = (a - 1, b)
            out[k] = out.get(k, QSCALAR_ZERO) + c * a
        return XSPoly(out)

    def dilate(self, a: int, b: int) -> "XSPoly":
        """Substitution x -> q^a x, s -> q^b s (a, b may be negative)."""
        return XSPoly({(xa, sb): c * q_pow(a * xa + b * sb)
                       for (xa, sb), c in self.terms.items()})

    def scale_s(self, c: ScalarLike) -> "XSPoly":
        """Substitution s -> c*s, e.g. the s -> -s and s -> (1-q)s arguments."""
        c = _scalar(c)
        return XSPoly({(a, b): v * c ** b for (a, b), v in self.terms.items()})

    def evaluate(self, x0: Union[int, Fraction], s0: Union[int, Fraction],
                 q0: Union[int, Fraction]) -> Fraction:
        """Exact value at (x0, s0) with q = q0; PoleAtPoint if a coefficient has one."""
        total = Fraction(0)
        for (a, b), c in self.terms.items():
            total += c.evaluate(q0) * Fraction(x0) ** a * Fraction(s0) ** b
        return total

    def sorted_terms(self) -> list[tuple[Key, QScalar]]:
        """Canonical order: descending x-degree, then descending s-degree."""
        return sorted(self.terms.items(), key=lambda kv: (-kv[0][0], -kv[0][1]))

    def to_json(self) -> dict:
        return {"terms": [{"x": a, "s": b, "coef": c.to_json()}
                          for (a, b), c in self.sorted_terms()]}

    @classmethod
    def from_json(cls, data: dict) -> "XSPoly":
        return cls({(t["x"], t["s"]): QScalar.from_json(t["coef"])
                    for t in data["terms"]})

    def __repr__(self) -> str:
        return f"XSPoly({self.terms!r})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for (a, b), c in self.sorted_terms():
            factors = []
            if b:
                factors.append("s" if b == 1 else f"s^{b}")
            if a:
                factors.append("x" if a == 1 else f"x^{a}")
            cs = str(c)
            if not factors:
                pieces.append(cs if _is_plain(cs) else f"({cs})")
                continue
            if c == QSCALAR_ONE:
                pieces.append("*".join(factors))
            else:
                head = cs if _is_plain(cs) else f"({cs})"
                pieces.append("*".join([head] + factors))
        return " + ".join(pieces)


def _is_plain(rendered: str) -> bool:
    """True when a coefficient can be printed without parentheses."""
    return not (rendered.startswith("(") or rendered.startswith("-")
                or "+" in rendered or "-" in rendered)

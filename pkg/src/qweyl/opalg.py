"""The two-generator operator algebra and its normal-ordering engine.

Words over the alphabet {X, D} are rewritten with the single rule

    D * X  ->  twist * X * D  +  1

until every word has the shape X^a D^b.  The twist scalar is data: q gives
the q-Weyl algebra (D acts as the q-derivative), 1 the classical one.  The
scalar s commutes with both generators and is carried as a separate power on
each term, never inside words.

Rewriting is leftmost-innermost with term-map accumulation: a word is
consumed right to left, and prepending D to an already-normal X^a D^b uses
the memoized normal form of D X^a, itself produced by iterating the single
rule on its leftmost pair.  The result is independent of rewrite order
(confluence); the test suite checks this against a naive rewriter that picks
random positions.

NormalOp values are the ground truth ("oracle") that every closed-form
coefficient formula in the families module is verified against.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .polyring import XSPoly
from .qarith import (
    QScalar,
    QSCALAR_ONE,
    QSCALAR_Q,
    QSCALAR_ZERO,
)

X = "X"
D = "D"

Key = tuple[int, int, int]  # (X power, D power, s power)

TWIST_Q = QSCALAR_Q
TWIST_ONE = QSCALAR_ONE


class TwistMismatch(ValueError):
    """Operators from algebras with different commutation scalars were combined."""


@dataclass(frozen=True)
class OpExpr:
    """Unreduced operator input: a formal sum of scalar-weighted words.

    Each term is (coefficient, s power, word); the same word may repeat.
    """

    terms: tuple[tuple[QScalar, int, tuple[str, ...]], ...]

    def __post_init__(self):
        for _, s_pow, word in self.terms:
            if s_pow < 0:
                raise ValueError("s power must be nonnegative")
            for letter in word:
                if letter not in (X, D):
                    raise ValueError(f"unknown generator {letter!r}")

    @classmethod
    def word(cls, letters: Union[str, Sequence[str]], coef: Union[QScalar, int] = 1,
             s_power: int = 0) -> "OpExpr":
        coef = coef if isinstance(coef, QScalar) else QScalar(coef)
        return cls(((coef, s_power, tuple(letters)),))

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[Union[QScalar, int], int, Sequence[str]]]) -> "OpExpr":
        return cls(tuple(
            (c if isinstance(c, QScalar) else QScalar(c), m, tuple(w))
            for c, m, w in terms))

    def __add__(self, other: "OpExpr") -> "OpExpr":
        return OpExpr(self.terms + other.terms)


# Normal forms of D X^a and D^b X^a, memoized per twist.  Read-mostly dicts;
# concurrent readers are safe, a missed entry is simply recomputed.
_D_PAST_X: dict[tuple[QScalar, int], dict[tuple[int, int], QScalar]] = {}
_D_POW_PAST_X: dict[tuple[QScalar, int, int], dict[tuple[int, int], QScalar]] = {}


def _d_past_x_pow(a: int, twist: QScalar) -> dict[tuple[int, int], QScalar]:
    """Normal form of the word D X^a, by iterating the rule on the leftmost pair."""
    if a == 0:
        return {(0, 1): QSCALAR_ONE}
    cached = _D_PAST_X.get((twist, a))
    if cached is not None:
        return cached
    prev = _d_past_x_pow(a - 1, twist)
    # D X^a = (twist*X*D + 1) X^(a-1) = twist * X * (D X^(a-1)) + X^(a-1)
    out = {(x + 1, d): twist * c for (x, d), c in prev.items()}
    key = (a - 1, 0)
    out[key] = out.get(key, QSCALAR_ZERO) + QSCALAR_ONE
    _D_PAST_X[(twist, a)] = out
    return out


def _d_pow_past_x_pow(b: int, a: int, twist: QScalar) -> dict[tuple[int, int], QScalar]:
    """Normal form of D^b X^a."""
    if b == 0 or a == 0:
        return {(a, b): QSCALAR_ONE}
    cached = _D_POW_PAST_X.get((twist, b, a))
    if cached is not None:
        return cached
    prev = _d_pow_past_x_pow(b - 1, a, twist)
    out: dict[tuple[int, int], QScalar] = {}
    for (x, d), c in prev.items():
        for (x2, d2), c2 in _d_past_x_pow(x, twist).items():
            key = (x2, d2 + d)
            out[key] = out.get(key, QSCALAR_ZERO) + c * c2
    out = {k: v for k, v in out.items() if not v.is_zero()}
    _D_POW_PAST_X[(twist, b, a)] = out
    return out


def _word_normal_form(word: Sequence[str], twist: QScalar) -> dict[tuple[int, int], QScalar]:
    """Normal form of a single word, consumed right to left."""
    acc: dict[tuple[int, int], QScalar] = {(0, 0): QSCALAR_ONE}
    for letter in reversed(word):
        if letter == X:
            acc = {(a + 1, b): c for (a, b), c in acc.items()}
        else:
            new: dict[tuple[int, int], QScalar] = {}
            for (a, b), c in acc.items():
                for (x, d), c2 in _d_past_x_pow(a, twist).items():
                    key = (x, d + b)
                    new[key] = new.get(key, QSCALAR_ZERO) + c * c2
            acc = {k: v for k, v in new.items() if not v.is_zero()}
    return acc


class NormalOp:
    """A normally ordered operator: sum of c * X^a D^b s^m terms."""

    __slots__ = ("twist", "terms")

    def __init__(self, twist: QScalar, terms: Mapping[Key, QScalar] = ()):
        clean: dict[Key, QScalar] = {}
        for key, c in dict(terms).items():
            a, b, m = key
            if a < 0 or b < 0 or m < 0:
                raise ValueError("NormalOp exponents must be nonnegative")
            if not isinstance(c, QScalar):
                c = QScalar(c)
            if not c.is_zero():
                clean[key] = c
        object.__setattr__(self, "twist", twist)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("NormalOp is immutable")

    @classmethod
    def identity(cls, twist: QScalar) -> "NormalOp":
        return cls(twist, {(0, 0, 0): QSCALAR_ONE})

    @classmethod
    def from_polynomial(cls, p: XSPoly, twist: QScalar) -> "NormalOp":
        """The multiplication operator f(X, s) for a polynomial f(x, s)."""
        return cls(twist, {(a, 0, m): c for (a, m), c in p.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, NormalOp):
            return NotImplemented
        return self.twist == other.twist and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.twist, frozenset(self.terms.items())))

    def __add__(self, other) -> "NormalOp":
        if not isinstance(other, NormalOp):
            return NotImplemented
        if self.twist != other.twist:
            raise TwistMismatch("cannot add operators with different twists")
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, QSCALAR_ZERO) + c
        return NormalOp(self.twist, out)

    def __neg__(self) -> "NormalOp":
        return NormalOp(self.twist, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other) -> "NormalOp":
        return self + (-other)

    def scale(self, c: Union[QScalar, int]) -> "NormalOp":
        if not isinstance(c, QScalar):
            c = QScalar(c)
        return NormalOp(self.twist, {k: v * c for k, v in self.terms.items()})

    def __rmul__(self, other):
        if isinstance(other, (QScalar, int)):
            return self.scale(other)
        return NotImplemented

    def __mul__(self, other) -> "NormalOp":
        """Normal form of the composition self after other."""
        if isinstance(other, (QScalar, int)):
            return self.scale(other)
        if not isinstance(other, NormalOp):
            return NotImplemented
        if self.twist != other.twist:
            raise TwistMismatch("cannot compose operators with different twists")
        out: dict[Key, QScalar] = {}
        for (a1, b1, m1), c1 in self.terms.items():
            for (a2, b2, m2), c2 in other.terms.items():
                c12 = c1 * c2
                for (x, d), c in _d_pow_past_x_pow(b1, a2, self.twist).items():
                    key = (a1 + x, d + b2, m1 + m2)
                    out[key] = out.get(key, QSCALAR_ZERO) + c12 * c
        return NormalOp(self.twist, out)

    def power(self, n: int) -> "NormalOp":
        """n-fold composition with itself; power(0) is the identity."""
        if n < 0:
            raise ValueError("operator power must be nonnegative")
        result = NormalOp.identity(self.twist)
        for _ in range(n):
            result = result * self
        return result

    def apply(self, p: XSPoly) -> XSPoly:
        """Act on a polynomial: X multiplies by x, D is the q-derivative,
        s powers multiply by s^m.  The twist should be the symbolic q for
        the action to respect composition; specialize afterwards for q = 1
        checks."""
        if not self.terms:
            return XSPoly.zero()
        max_b = max(b for _, b, _ in self.terms)
        derivatives = [p]
        for _ in range(max_b):
            derivatives.append(derivatives[-1].dq())
        result = XSPoly.zero()
        for (a, b, m), c in self.terms.items():
            result = result + derivatives[b].shift(a, m, c)
        return result

    def specialize_q(self, r: Union[int, Fraction]) -> "NormalOp":
        """Evaluate every coefficient (and the twist) at q = r exactly."""
        twist = QScalar.from_fraction(self.twist.evaluate(r))
        out: dict[Key, QScalar] = {}
        for k, c in self.terms.items():
            v = c.evaluate(r)
            if v != 0:
                out[k] = QScalar.from_fraction(v)
        return NormalOp(twist, out)

    def sorted_terms(self) -> list[tuple[Key, QScalar]]:
        """Display order: descending D power, ascending X power within it."""
        return sorted(self.terms.items(), key=lambda kv: (-kv[0][1], kv[0][0], kv[0][2]))

    def to_json(self) -> dict:
        entries = sorted(self.terms.items(), key=lambda kv: (kv[0][1], kv[0][0], kv[0][2]))
        return {"twist": self.twist.to_json(),
                "terms": [{"x": a, "d": b, "s": m, "coef": c.to_json()}
                          for (a, b, m), c in entries]}

    @classmethod
    def from_json(cls, data: dict) -> "NormalOp":
        return cls(QScalar.from_json(data["twist"]),
                   {(t["x"], t["d"], t["s"]): QScalar.from_json(t["coef"])
                    for t in data["terms"]})

    def __repr__(self) -> str:
        return f"NormalOp(twist={self.twist!s}, terms={self.terms!r})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for (a, b, m), c in self.sorted_terms():
            factors = []
            if m:
                factors.append("s" if m == 1 else f"s^{m}")
            if a:
                factors.append("X" if a == 1 else f"X^{a}")
            if b:
                factors.append("D" if b == 1 else f"D^{b}")
            cs = str(c)
            plain = not (cs.startswith("(") or cs.startswith("-")
                         or "+" in cs or "-" in cs)
            if not factors:
                pieces.append(cs if plain else f"({cs})")
            elif c == QSCALAR_ONE:
                pieces.append("*".join(factors))
            else:
                pieces.append("*".join([cs if plain else f"({cs})"] + factors))
        return " + ".join(pieces)


def normal_order(e: OpExpr, twist: QScalar) -> NormalOp:
    """Rewrite every word of an unreduced expression to normal form and
    collect like terms."""
    out: dict[Key, QScalar] = {}
    for coef, s_pow, word in e.terms:
        for (a, b), c in _word_normal_form(word, twist).items():
            key = (a, b, s_pow)
            out[key] = out.get(key, QSCALAR_ZERO) + coef * c
    return NormalOp(twist, out)


def affine_factor(c: Union[QScalar, int], twist: QScalar) -> NormalOp:
    """The operator X + c*s*D."""
    if not isinstance(c, QScalar):
        c = QScalar(c)
    return NormalOp(twist, {(1, 0, 0): QSCALAR_ONE, (0, 1, 1): c})


def product(factors: Sequence[NormalOp], twist: QScalar | None = None) -> NormalOp:
    """Left-to-right composition of all factors, which must share one twist.

    The empty product is the identity, in the algebra named by `twist`
    (defaulting to the symbolic q)."""
    if not factors:
        return NormalOp.identity(TWIST_Q if twist is None else twist)
    expected = factors[0].twist if twist is None else twist
    for f in factors:
        if f.twist != expected:
            raise TwistMismatch("product factors carry different twists")
    result = factors[0]
    for f in factors[1:]:
        result = result * f
    return result


def power(base: NormalOp, n: int) -> NormalOp:
    return base.power(n)

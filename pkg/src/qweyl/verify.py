"""Verification harness: closed forms against the rewriting oracle.

Each case assembles, for every degree n in its range, a left side from the
engine (operator powers and products) and a right side from closed-form
families, then compares term maps exactly -- no sampling, no tolerance.
Cases are pure functions of their arguments, so they are deterministic and
safe to run concurrently.

A seeded fault-injection mode flips the sign of one randomly chosen
right-hand-side coefficient and must drive the case to a failing report
with a populated first_failure; this demonstrates the harness can detect
single-coefficient errors.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional

from .families import (
    ONE_MINUS_Q,
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
    qweyl_binomial,
    weyl_binomial,
)
from .opalg import TWIST_ONE, TWIST_Q, NormalOp, affine_factor
from .polyring import XSPoly
from .qarith import QScalar, QSCALAR_ZERO, eval_q, gauss_binomial, q_integer, q_pow

Comparison = tuple[int, dict, dict]  # (n, lhs term map, rhs term map)


@dataclass(frozen=True)
class FirstFailure:
    n: int
    term: tuple
    lhs: str
    rhs: str

    def to_json(self) -> dict:
        return {"n": self.n, "term": list(self.term), "lhs": self.lhs, "rhs": self.rhs}


@dataclass(frozen=True)
class VerificationReport:
    case_id: str
    n_range: tuple[int, int]
    status: str  # "pass" | "fail"
    first_failure: Optional[FirstFailure]

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        return {"case": self.case_id,
                "n_max": self.n_range[1],
                "status": self.status,
                "first_failure": None if self.first_failure is None
                else self.first_failure.to_json()}


def _sd_pow(k: int, twist) -> NormalOp:
    return NormalOp(twist, {(0, k, k): 1})


def _mult(p: XSPoly, twist) -> NormalOp:
    return NormalOp.from_polynomial(p, twist)


def _comb(n: int, k: int) -> int:
    import math
    return math.comb(n, k)


# ---------------------------------------------------------------------------
# Theorem cases: operator identities, engine on the left, closed forms right.
# ---------------------------------------------------------------------------

def _case_t1(n_max: int) -> Iterator[Comparison]:
    """(X+sD)^n = sum_k C(n,k) H_(n-k)(X,s) (sD)^k at q = 1."""
    for n in range(1, n_max + 1):
        lhs = _xsd_power(n).specialize_q(1)
        rhs = NormalOp(TWIST_ONE, {})
        for k in range(n + 1):
            rhs = rhs + (_mult(hermite(n - k), TWIST_ONE) * _sd_pow(k, TWIST_ONE)).scale(_comb(n, k))
        yield n, lhs.terms, rhs.terms


def _case_c1(n_max: int) -> Iterator[Comparison]:
    """Normal form of (X+sD)^n at q = 1 has Weyl binomial coefficients."""
    for n in range(1, n_max + 1):
        lhs = _xsd_power(n).specialize_q(1)
        rhs = {}
        for m in range(n + 1):
            for j in range(min(m, n - m) + 1):
                rhs[(m - j, n - m - j, n - m)] = QScalar(weyl_binomial(n, m, j))
        yield n, lhs.terms, rhs


def _case_t2(n_max: int) -> Iterator[Comparison]:
    """(X+q^(n-1)sD)...(X+sD) = sum_k g_n(k,X,s) s^k D^k."""
    op = NormalOp.identity(TWIST_Q)
    for n in range(1, n_max + 1):
        op = affine_factor(q_pow(n - 1), TWIST_Q) * op
        rhs = NormalOp(TWIST_Q, {})
        for k in range(n + 1):
            rhs = rhs + _mult(g_coeff(n, k), TWIST_Q) * _sd_pow(k, TWIST_Q)
        yield n, op.terms, rhs.terms


def _case_c2(n_max: int) -> Iterator[Comparison]:
    """Fully expanded coefficients of the descending-power product."""
    op = NormalOp.identity(TWIST_Q)
    for n in range(1, n_max + 1):
        op = affine_factor(q_pow(n - 1), TWIST_Q) * op
        rhs = {}
        for m in range(n + 1):
            for j in range(min(m, n - m) + 1):
                rhs[(m - j, n - m - j, n - m)] = corollary2_coeff(n, m, j)
        yield n, op.terms, rhs


def _case_t3(n_max: int) -> Iterator[Comparison]:
    """(X+qsD)(X+q^3 sD)...(X+q^(2n-1)sD) = sum_k [n k] q^(kn) h_(n-k)(X,s) (sD)^k."""
    op = NormalOp.identity(TWIST_Q)
    for n in range(1, n_max + 1):
        op = op * affine_factor(q_pow(2 * n - 1), TWIST_Q)
        rhs = NormalOp(TWIST_Q, {})
        for k in range(n + 1):
            scale = QScalar(gauss_binomial(n, k)) * q_pow(k * n)
            rhs = rhs + (_mult(h_poly(n - k), TWIST_Q) * _sd_pow(k, TWIST_Q)).scale(scale)
        yield n, op.terms, rhs.terms


def _case_c3(n_max: int) -> Iterator[Comparison]:
    """Fully expanded coefficients of the odd-power product."""
    op = NormalOp.identity(TWIST_Q)
    for n in range(1, n_max + 1):
        op = op * affine_factor(q_pow(2 * n - 1), TWIST_Q)
        rhs = {}
        for m in range(n + 1):
            for j in range(min(m, n - m) + 1):
                rhs[(m - j, n - m - j, n - m)] = corollary3_coeff(n, m, j)
        yield n, op.terms, rhs


def _case_t4(n_max: int) -> Iterator[Comparison]:
    """(X+(1-q)sD)^n = sum_k A(n,k,X) (1-q)^k s^k D^k."""
    base = affine_factor(QScalar(ONE_MINUS_Q), TWIST_Q)
    op = NormalOp.identity(TWIST_Q)
    for n in range(1, n_max + 1):
        op = op * base
        rhs = NormalOp(TWIST_Q, {})
        for k in range(n + 1):
            scale = QScalar(ONE_MINUS_Q) ** k
            rhs = rhs + (_mult(a_coeff(n, k), TWIST_Q) * _sd_pow(k, TWIST_Q)).scale(scale)
        yield n, op.terms, rhs.terms


# ---------------------------------------------------------------------------
# Identity cases: recurrences, derivative rules, collapses.
# ---------------------------------------------------------------------------

def _case_h_deriv(n_max: int) -> Iterator[Comparison]:
    for n in range(1, n_max + 1):
        yield n, hermite(n).ddx().terms, (n * hermite(n - 1)).terms


def _case_op_110(n_max: int) -> Iterator[Comparison]:
    """D H_n(X,s) = H_n(X,s) D + n H_(n-1)(X,s), as apply-equality on x^m."""
    for n in range(1, n_max + 1):
        hn, hprev = hermite(n), hermite(n - 1)
        for m in range(9):
            xm = XSPoly.x(m)
            lhs = (hn * xm).ddx()
            rhs = hn * xm.ddx() + n * (hprev * xm)
            yield n, lhs.terms, rhs.terms


def _case_sym_113(n_max: int) -> Iterator[Comparison]:
    for n in range(1, n_max + 1):
        lhs, rhs = {}, {}
        for m in range(n + 1):
            for j in range(min(m, n - m) + 1):
                w = QScalar(weyl_binomial(n, m, j))
                lhs[(m, j, 0)] = w
                rhs[(m, j, 0)] = QScalar(weyl_binomial(n, n - m, j))
                lhs[(m, j, 1)] = w
                rhs[(m, j, 1)] = QScalar(_comb(n - 2 * j, m - j) * weyl_binomial(n, j, j))
        yield n, lhs, rhs


def _case_h_closed(n_max: int) -> Iterator[Comparison]:
    """The descending-power product applied to 1 gives h_n."""
    op = NormalOp.identity(TWIST_Q)
    for n in range(1, n_max + 1):
        op = affine_factor(q_pow(n - 1), TWIST_Q) * op
        yield n, op.apply(XSPoly.one()).terms, h_poly(n).terms


def _case_exp_26(n_max: int) -> Iterator[Comparison]:
    for n in range(1, n_max + 1):
        yield n, apply_exp_q2(XSPoly.x(n)).terms, h_poly(n).terms


def _case_dq_27(n_max: int) -> Iterator[Comparison]:
    for n in range(1, n_max + 1):
        rhs = QScalar(q_integer(n)) * h_poly(n - 1)
        yield n, h_poly(n).dq().terms, rhs.terms


def _case_rec_28(n_max: int) -> Iterator[Comparison]:
    for n in range(2, n_max + 1):
        rhs = h_poly(n - 1).shift(1, 0) \
            + h_poly(n - 2).shift(0, 1, q_pow(n - 1) * q_integer(n - 1))
        yield n, h_poly(n).terms, rhs.terms


def _case_rec_33(n_max: int) -> Iterator[Comparison]:
    """h_n(x,s) = x h_(n-1)(x, q^2 s) + q s Dq h_(n-1)(x, q^2 s)."""
    for n in range(1, n_max + 1):
        scaled = h_poly(n - 1).dilate(0, 2)
        rhs = scaled.shift(1, 0) + scaled.dq().shift(0, 1, q_pow(1))
        yield n, h_poly(n).terms, rhs.terms


def _case_scale_3(n_max: int) -> Iterator[Comparison]:
    for n in range(1, n_max + 1):
        yield n, h_poly(n).dilate(1, 2).terms, (q_pow(n) * h_poly(n)).terms


def _lucas_op(p: XSPoly) -> XSPoly:
    """(X + (1-q) s Dq) acting on a polynomial."""
    return p.shift(1, 0) + p.dq().shift(0, 1, QScalar(ONE_MINUS_Q))


def _case_lucas(n_max: int) -> Iterator[Comparison]:
    """The three Lucas relations, including the extra +s at n = 1."""
    for n in range(0, n_max + 1):
        lhs = _lucas_op(lucas(n).scale_s(-1))
        if n == 0:
            rhs = lucas(1).scale_s(-1)
        elif n == 1:
            rhs = lucas(2).scale_s(-1) + XSPoly.s() + XSPoly.s()
        else:
            rhs = lucas(n + 1).scale_s(-1) + lucas(n - 1).scale_s(-1).shift(0, 1)
        yield n, lhs.terms, rhs.terms


def _case_expand_47(n_max: int) -> Iterator[Comparison]:
    for n in range(1, n_max + 1):
        lhs = big_hermite(n).scale_s(ONE_MINUS_Q)
        yield n, lhs.terms, hermite_lucas_expand(n).terms


def _case_closed_414(n_max: int) -> Iterator[Comparison]:
    for n in range(1, n_max + 1):
        rhs = {(n - 2 * l, l): QScalar(qweyl_binomial(n, l, l))
               for l in range(n // 2 + 1)}
        yield n, big_hermite(n).terms, rhs


def _qweyl_pair_case(path_a: str, path_b: str) -> Callable[[int], Iterator[Comparison]]:
    def case(n_max: int) -> Iterator[Comparison]:
        for n in range(1, n_max + 1):
            lhs, rhs = {}, {}
            for m in range(n + 1):
                for l in range(min(m, n - m) + 1):
                    lhs[(m, l)] = QScalar(qweyl_binomial(n, m, l, path_a))
                    rhs[(m, l)] = QScalar(qweyl_binomial(n, m, l, path_b))
            yield n, lhs, rhs
    return case


def _case_q1_collapse(n_max: int) -> Iterator[Comparison]:
    for n in range(1, n_max + 1):
        lhs, rhs = {}, {}
        for m in range(n + 1):
            for l in range(min(m, n - m) + 1):
                value = eval_q(QScalar(qweyl_binomial(n, m, l)), 1)
                lhs[(m, l)] = QScalar.from_fraction(value)
                rhs[(m, l)] = QScalar(weyl_binomial(n, m, l))
        yield n, lhs, rhs


THEOREM_CASES: dict[str, Callable[[int], Iterator[Comparison]]] = {
    "T1": _case_t1,
    "T2": _case_t2,
    "T3": _case_t3,
    "T4": _case_t4,
    "C1": _case_c1,
    "C2": _case_c2,
    "C3": _case_c3,
}

IDENTITY_CASES: dict[str, Callable[[int], Iterator[Comparison]]] = {
    "H-deriv-1.9": _case_h_deriv,
    "op-1.10": _case_op_110,
    "sym-1.13": _case_sym_113,
    "h-closed-2.1-vs-2.3": _case_h_closed,
    "exp-2.6": _case_exp_26,
    "dq-2.7": _case_dq_27,
    "rec-2.8": _case_rec_28,
    "rec-3.3": _case_rec_33,
    "scale-3": _case_scale_3,
    "lucas-4.4-4.6": _case_lucas,
    "expand-4.7": _case_expand_47,
    "closed-4.14": _case_closed_414,
    "factor-4.16": _qweyl_pair_case("closed", "factored"),
    "rec-4.17": _qweyl_pair_case("closed", "recurrence"),
    "q1-collapse": _case_q1_collapse,
}

# Stated ranges: 10 for the integer-arithmetic theorem, 8 where q-polynomial
# products grow, 12 for the recurrence/derivative suite, 10 for the
# q-Weyl-binomial chain.
DEFAULT_N_MAX: dict[str, int] = {
    "T1": 10, "C1": 10,
    "T2": 8, "C2": 8, "T3": 8, "C3": 8, "T4": 8,
    "H-deriv-1.9": 12, "op-1.10": 12, "sym-1.13": 12,
    "h-closed-2.1-vs-2.3": 8,
    "exp-2.6": 12, "dq-2.7": 12, "rec-2.8": 12, "rec-3.3": 12, "scale-3": 12,
    "lucas-4.4-4.6": 12,
    "expand-4.7": 10, "closed-4.14": 10, "factor-4.16": 10, "rec-4.17": 10,
    "q1-collapse": 10,
}

ALL_CASE_IDS: tuple[str, ...] = tuple(THEOREM_CASES) + tuple(IDENTITY_CASES)

_CASE_START: dict[str, int] = {"rec-2.8": 2, "lucas-4.4-4.6": 0}


def _run_case(case_id: str, case: Callable[[int], Iterator[Comparison]],
              n_max: int, fault_seed: Optional[int]) -> VerificationReport:
    comparisons = list(case(n_max))
    if fault_seed is not None:
        rng = random.Random(fault_seed)
        slots = [(i, key)
                 for i, (_n, _lhs, rhs) in enumerate(comparisons)
                 for key in sorted(rhs)]
        if not slots:
            raise ValueError(f"case {case_id} has no coefficients to perturb")
        idx, key = rng.choice(slots)
        n, lhs, rhs = comparisons[idx]
        mutated = dict(rhs)
        mutated[key] = -mutated[key]
        comparisons[idx] = (n, lhs, mutated)
    start = _CASE_START.get(case_id, 1)
    for n, lhs, rhs in comparisons:
        for key in sorted(set(lhs) | set(rhs)):
            lv = lhs.get(key, QSCALAR_ZERO)
            rv = rhs.get(key, QSCALAR_ZERO)
            if lv != rv:
                failure = FirstFailure(n=n, term=tuple(key), lhs=str(lv), rhs=str(rv))
                return VerificationReport(case_id, (start, n_max), "fail", failure)
    return VerificationReport(case_id, (start, n_max), "pass", None)


def verify_theorem(case_id: str, n_max: int,
                   fault_seed: Optional[int] = None) -> VerificationReport:
    """Check one operator identity (T1-T4) or coefficient corollary (C1-C3)
    for every n up to n_max."""
    if case_id not in THEOREM_CASES:
        raise ValueError(f"unknown theorem case {case_id!r}; expected one of {tuple(THEOREM_CASES)}")
    if n_max < 1:
        raise ValueError("n_max must be positive")
    return _run_case(case_id, THEOREM_CASES[case_id], n_max, fault_seed)


def verify_identity(case_id: str, n_max: int,
                    fault_seed: Optional[int] = None) -> VerificationReport:
    """Check one recurrence/derivative/collapse identity over its stated
    range, capped at n_max."""
    if case_id not in IDENTITY_CASES:
        raise ValueError(f"unknown identity case {case_id!r}; expected one of {tuple(IDENTITY_CASES)}")
    if n_max < 1:
        raise ValueError("n_max must be positive")
    effective = min(n_max, DEFAULT_N_MAX[case_id])
    return _run_case(case_id, IDENTITY_CASES[case_id], effective, fault_seed)


def run_cases(case_ids: Optional[Iterable[str]] = None,
              n_max: Optional[int] = None) -> list[VerificationReport]:
    """Run selected cases (default: all) at their stated ranges, capped at
    n_max when given.  Reports come back in a fixed case order."""
    ids = list(case_ids) if case_ids is not None else list(ALL_CASE_IDS)
    reports = []
    for case_id in ids:
        limit = DEFAULT_N_MAX.get(case_id)
        if limit is None:
            raise ValueError(f"unknown case {case_id!r}")
        if n_max is not None:
            limit = min(limit, n_max)
        if case_id in THEOREM_CASES:
            reports.append(verify_theorem(case_id, limit))
        else:
            reports.append(verify_identity(case_id, limit))
    return reports

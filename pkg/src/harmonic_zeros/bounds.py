"""Degree-dependent bounds on the number of zeros of f_c and the case
analysis behind them."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import OutOfScope, WrongCase
from .poly import Polynomial, RationalFunction, shift_numerator
from .solver import ZeroSet

ALPHA_TOL = 1e-9


class BoundCase(str, enum.Enum):
    P_LESS_Q = "PLessQ"
    EQUAL = "Equal"
    P_EQUALS_Q_PLUS_1 = "PEqualsQPlus1"
    P_GREATER_Q_PLUS_1 = "PGreaterQPlus1"


def bound_case(n_p: int, n_q: int) -> BoundCase:
    if n_p < n_q:
        return BoundCase.P_LESS_Q
    if n_p == n_q:
        return BoundCase.EQUAL
    if n_p == n_q + 1:
        return BoundCase.P_EQUALS_Q_PLUS_1
    return BoundCase.P_GREATER_Q_PLUS_1


def max_zero_bound(n_p: int, n_q: int) -> int:
    """Upper bound on N(f_c) for r of type (n_p, n_q).

    ======================  ================
    n_p <  n_q              2 n_p + 3 n_q - 3
    n_p == n_q              5 n_p - 5
    n_p == n_q + 1          5 n_p - 6
    n_p >  n_q + 1          3 n_p + 2 n_q - 2
    ======================  ================
    """
    if min(n_p, n_q) < 0 or max(n_p, n_q) < 2:
        raise OutOfScope(f"type ({n_p}, {n_q}) has degree < 2")
    case = bound_case(n_p, n_q)
    if case is BoundCase.P_LESS_Q:
        return 2 * n_p + 3 * n_q - 3
    if case is BoundCase.EQUAL:
        return 5 * n_p - 5
    if case is BoundCase.P_EQUALS_Q_PLUS_1:
        return 5 * n_p - 6
    return 3 * n_p + 2 * n_q - 2


def signature(n_p: int, n_q: int) -> int | None:
    """N+ - N- for regular f_c, or ``None`` when n_p = n_q + 1."""
    if n_p <= n_q:
        return n_q - 1
    if n_p > n_q + 1:
        return n_p
    return None


def reduce_equal_degree(r: RationalFunction):
    """Split r = r_tilde + alpha when deg p = deg q = n.

    Returns ``(r_tilde, alpha)`` where alpha is the leading ratio and
    r_tilde = (p - alpha q) / q has numerator degree at most n - 1.
    """
    if r.n_p != r.n_q or r.numerator.is_zero:
        raise WrongCase(f"type ({r.n_p}, {r.n_q}) is not of equal degrees")
    alpha = r.numerator.leading / r.denominator.leading
    diff = np.array(r.numerator.coeffs - alpha * r.denominator.coeffs)
    diff[-1] = 0.0  # exact cancellation of the leading term
    scale = max(r.numerator.max_abs(), abs(alpha) * r.denominator.max_abs())
    keep = np.flatnonzero(np.abs(diff) > 1e-14 * scale)
    diff = diff[: keep[-1] + 1] if keep.size else diff[:0]
    r_tilde = RationalFunction(Polynomial(diff), r.denominator, check=False)
    return r_tilde, complex(alpha)


@dataclass(frozen=True)
class LeadingRatioCase:
    alpha: complex
    signature: int | None

    @property
    def label(self) -> str:
        if self.signature is None:
            return "inconclusive"
        return "expanding" if abs(self.alpha) > 1 else "contracting"


def leading_ratio_case(r: RationalFunction, tol: float = ALPHA_TOL) -> LeadingRatioCase:
    """Case analysis for n_p = n_q + 1, where r(z) = alpha z + (bounded part).

    |alpha| > 1 gives N+ - N- = n_p, |alpha| < 1 gives n_q - 1, and
    |alpha| = 1 (within ``tol``) leaves the signature undetermined.
    """
    if r.n_p != r.n_q + 1:
        raise WrongCase(f"type ({r.n_p}, {r.n_q}) does not have n_p = n_q + 1")
    alpha = complex(r.numerator.leading / r.denominator.leading)
    if abs(alpha) > 1 + tol:
        sig = r.n_p
    elif abs(alpha) < 1 - tol:
        sig = r.n_q - 1
    else:
        sig = None
    return LeadingRatioCase(alpha, sig)


@dataclass(frozen=True)
class BoundReport:
    n_p: int
    n_q: int
    case: BoundCase
    bound: int
    count: int
    attained: bool
    alpha: complex | None
    regular: bool
    expected_signature: int | None
    reduced_bound: int | None = None

    @property
    def within_bound(self) -> bool:
        return self.count <= self.bound

    @property
    def consistent(self) -> bool:
        """Count within the bound, and regular whenever the bound is attained."""
        return self.within_bound and (self.regular or not self.attained)


def assess(r: RationalFunction, c: complex, zeroset: ZeroSet) -> BoundReport:
    """Bound report for a solved instance.

    The case is selected from the degrees of r_c, whose numerator p - c q can
    have a different degree than p.
    """
    rc = shift_numerator(r, c)
    n_p, n_q = rc.n_p, rc.n_q
    case = bound_case(n_p, n_q)
    bound = max_zero_bound(n_p, n_q)
    alpha = None
    sig = signature(n_p, n_q)
    reduced = None
    if case is BoundCase.EQUAL:
        r_tilde, alpha = reduce_equal_degree(rc)
        reduced = 2 * r_tilde.n_p + 3 * n_q - 3
    elif case is BoundCase.P_EQUALS_Q_PLUS_1:
        lr = leading_ratio_case(rc)
        alpha, sig = lr.alpha, lr.signature
    return BoundReport(
        n_p=n_p,
        n_q=n_q,
        case=case,
        bound=bound,
        count=zeroset.count,
        attained=zeroset.count == bound,
        alpha=alpha,
        regular=zeroset.n_zero == 0,
        expected_signature=sig,
        reduced_bound=reduced,
    )

"""Exact two-sided sign test on paired increments."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import AllZeroError

DEFAULT_ZERO_TOL = 1e-12
TAIL_CONVENTION = "two-sided: min(1, 2 * smaller binomial tail), exact rational"


@dataclass(frozen=True)
class SignTestResult:
    n_nonzero: int
    n_positive: int
    p_value: float


def sign_test_pvalue_exact(k: int, n: int) -> Fraction:
    """Two-sided p for k successes out of n under Binomial(n, 1/2), as a Fraction."""
    if not 0 <= k <= n or n < 1:
        raise ValueError(f"need 0 <= k <= n and n >= 1, got k={k}, n={n}")
    lower = sum(comb(n, i) for i in range(k + 1))
    upper = sum(comb(n, i) for i in range(k, n + 1))
    p = Fraction(2 * min(lower, upper), 2**n)
    return min(p, Fraction(1))


def exact_sign_test(differences, zero_tol: float = DEFAULT_ZERO_TOL) -> SignTestResult:
    diffs = [float(d) for d in differences]
    nonzero = [d for d in diffs if abs(d) > zero_tol]
    if not nonzero:
        raise AllZeroError("no difference exceeds zero_tol; test not applicable", zero_tol=zero_tol)
    n_pos = sum(1 for d in nonzero if d > 0)
    p = sign_test_pvalue_exact(n_pos, len(nonzero))
    return SignTestResult(n_nonzero=len(nonzero), n_positive=n_pos, p_value=float(p))

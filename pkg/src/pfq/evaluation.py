"""p-adic evaluation of the series at a rational point of its convergence disc."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import InvalidArgument, InvalidDrift, OutsideConvergenceDisc
from .exact_arith import INF, RationalLike, check_prime, format_rational, valp
from .valuation import critical_drift, drifted_valuation
from .zigzag import HParams


@dataclass(frozen=True)
class PadicApprox:
    """``p^shift * residue + O(p^precision)``.

    ``shift`` is ``min(0, val_p(sum))`` so that ``residue`` is an integer in
    ``[0, p^(precision - shift))``.
    """

    p: int
    precision: int
    shift: int
    residue: int
    terms: int

    def value_mod(self) -> Fraction:
        return Fraction(self.residue) * Fraction(self.p) ** self.shift

    def __str__(self):
        return f"{self.residue} * {self.p}^{self.shift} + O({self.p}^{self.precision})"

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "N": self.precision,
            "shift": self.shift,
            "residue": self.residue,
            "terms": self.terms,
            "text": str(self),
        }


def heuristic_nu(nu0: RationalLike, val_a: RationalLike, N: int) -> Fraction:
    """``nu0 + (val_a - nu0)/N``, or the midpoint when that is not strictly inside."""
    nu0, val_a = Fraction(nu0), Fraction(val_a)
    if val_a <= nu0:
        raise InvalidDrift("the valuation of the argument must exceed the critical drift")
    if N >= 1:
        nu = nu0 + (val_a - nu0) / N
        if nu0 < nu < val_a:
            return nu
    return (nu0 + val_a) / 2


def truncation_bound(params: HParams, p: int, a: RationalLike, N: int, nu: RationalLike) -> int:
    """Number of terms after which every ``h_k a^k`` vanishes mod ``p^N``."""
    nu = Fraction(nu)
    va = valp(a, p)
    if va == INF:
        return 1
    nu0 = critical_drift(params, p)
    if not nu0 < nu < va:
        raise InvalidDrift(
            f"need {format_rational(nu0)} < nu < {va}, got {format_rational(nu)}"
        )
    v = drifted_valuation(params, p, nu).value
    return max(0, math.ceil((N - v) / (va - nu)))


def partial_sum(params: HParams, a: RationalLike, K: int) -> Fraction:
    a = Fraction(a)
    total, term = Fraction(0), Fraction(1)
    for k in range(K):
        total += term
        for x in params.top:
            term *= x + k
        for y in params.bottom:
            term /= y + k
        term *= a
    return total


def reduce_sum(total: Fraction, p: int, N: int, K: int) -> PadicApprox:
    v = valp(total, p)
    shift = 0 if v == INF else min(0, v)
    scaled = total * Fraction(p) ** (-shift)
    q = p ** (N - shift) if N > shift else 1
    residue = scaled.numerator * pow(scaled.denominator, -1, q) % q if q > 1 else 0
    return PadicApprox(p, N, shift, residue, K)


def eval_padic(
    params: HParams, p: int, a: RationalLike, N: int, nu: Optional[RationalLike] = None
) -> PadicApprox:
    """``h(a) + O(p^N)`` from an exact partial sum."""
    check_prime(p)
    if N < 0:
        raise InvalidArgument("precision must be nonnegative")
    a = Fraction(a)
    va = valp(a, p)
    if va == INF:
        return reduce_sum(Fraction(1), p, N, 1)
    nu0 = critical_drift(params, p)
    if va <= nu0:
        raise OutsideConvergenceDisc(
            f"val_p(a) = {va} is not above the critical drift {format_rational(nu0)}"
        )
    if nu is None:
        nu = heuristic_nu(nu0, va, N)
    K = truncation_bound(params, p, a, N, nu)
    return reduce_sum(partial_sum(params, a, K), p, N, K)

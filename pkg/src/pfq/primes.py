"""The set of primes at which the series has good reduction."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional

from sympy import nextprime, primerange

from .errors import AssumptionViolated, InvalidArgument
from .exact_arith import RationalLike, format_rational
from .valuation import has_good_reduction
from .zigzag import HParams, common_denominator, gamma_set


def christol_bound(params: HParams) -> Fraction:
    """Largest ``denom(g, g') * |g - g'|`` over pairs of elements of Gamma."""
    gammas, _ = gamma_set(params)
    best = Fraction(0)
    for g, h in combinations(gammas, 2):
        best = max(best, common_denominator((g, h)) * abs(g - h))
    return best


def representative_prime(c: int, d: int, lower: RationalLike) -> int:
    """Smallest prime ``p > lower`` with ``p = c (mod d)``."""
    if d < 1 or math.gcd(c, d) != 1:
        raise InvalidArgument(f"{c} is not invertible modulo {d}")
    p = nextprime(math.floor(Fraction(lower)))
    while (p - c) % d:
        p = nextprime(p)
    return p


@dataclass(frozen=True)
class GoodReductionSet:
    """Good primes: an explicit finite list plus residue classes mod ``d``.

    Primes up to ``bound`` and primes dividing ``d`` are decided by
    ``small_good``; every other prime by its class mod ``d``.
    """

    d: int
    bound: Fraction
    small_good: tuple[int, ...] = ()
    good_classes: frozenset = field(default_factory=frozenset)
    empty_reason: Optional[str] = None

    def __contains__(self, p: int) -> bool:
        if self.empty_reason is not None:
            return False
        if p <= self.bound or self.d % p == 0:
            return p in self.small_good
        return p % self.d in self.good_classes

    def to_json(self) -> dict:
        out = {
            "d": self.d,
            "bound": format_rational(self.bound),
            "small_good": list(self.small_good),
            "good_classes": sorted(self.good_classes),
        }
        if self.empty_reason is not None:
            out["empty_reason"] = self.empty_reason
        return out


def good_reduction_set(params: HParams, verify: bool = False) -> GoodReductionSet:
    """Classify all primes; ``verify`` re-tests each class at a second prime."""
    d = common_denominator(params.top + params.bottom)
    B = christol_bound(params)
    if params.m > params.n:
        return GoodReductionSet(d, B, empty_reason="m>n")
    bound = B if params.m == params.n else max(B, Fraction(2 * params.m))

    small = set(primerange(2, math.floor(bound) + 1))
    small.update(q for q in primerange(2, d + 1) if d % q == 0)
    small_good = tuple(sorted(q for q in small if has_good_reduction(params, q)[0]))

    classes = set()
    for c in range(d):
        if math.gcd(c, d) != 1:
            continue
        p = representative_prime(c, d, bound)
        good = has_good_reduction(params, p)[0]
        if verify:
            q = representative_prime(c, d, p)
            if has_good_reduction(params, q)[0] != good:
                raise AssumptionViolated(f"primes {p} and {q} disagree on the class {c} mod {d}")
        if good:
            classes.add(c % d)
    return GoodReductionSet(d, bound, small_good, frozenset(classes))

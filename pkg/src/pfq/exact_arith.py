"""Exact rationals and their p-adic data.

Rationals are plain :class:`fractions.Fraction` objects.  Infinite
valuations are represented by ``math.inf``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from sympy import isprime

from .errors import InvalidArgument, NotPIntegral, ZeroHasNoClass

Rational = Fraction
RationalLike = Union[Fraction, int, str]

INF = math.inf

_MINUS_SIGNS = ("−", "–")


def parse_rational(text: RationalLike) -> Fraction:
    """Parse ``"a/b"`` or ``"a"`` (optionally signed) into a Fraction."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    s = str(text).strip()
    for m in _MINUS_SIGNS:
        s = s.replace(m, "-")
    if not s:
        raise InvalidArgument("empty rational")
    try:
        num, sep, den = s.partition("/")
        if sep:
            return Fraction(int(num), int(den))
        return Fraction(int(num))
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidArgument(f"cannot parse rational {text!r}") from exc


def format_rational(x) -> str:
    if x == -INF:
        return "-inf"
    if x == INF:
        return "inf"
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


@lru_cache(maxsize=None)
def check_prime(p: int) -> int:
    if not isinstance(p, int) or isinstance(p, bool) or not isprime(p):
        raise InvalidArgument(f"{p!r} is not a prime")
    return p


def _remove(n: int, p: int) -> tuple[int, int]:
    """``(n / p^v, v)`` with ``v = val_p(n)``; divides by p^(2^i) to stay fast on huge n."""
    v, e, q = 0, 1, p
    stack = []
    while n % q == 0:
        n //= q
        v += e
        stack.append((q, e))
        q, e = q * q, 2 * e
    while stack:
        q, e = stack.pop()
        if n % q == 0:
            n //= q
            v += e
    return n, v


def _int_valuation(n: int, p: int) -> int:
    return _remove(n, p)[1]


def valp(x: RationalLike, p: int):
    """p-adic valuation of ``x``; ``math.inf`` when ``x == 0``."""
    check_prime(p)
    x = Fraction(x)
    if x == 0:
        return INF
    return _int_valuation(x.numerator, p) - _int_valuation(x.denominator, p)


def reduce_mod_pr(x: RationalLike, p: int, r: int) -> int:
    """The representative of ``x`` in ``[0, p**r)``; ``x`` must be p-integral."""
    check_prime(p)
    if r < 0:
        raise InvalidArgument("r must be nonnegative")
    x = Fraction(x)
    if x.denominator % p == 0:
        raise NotPIntegral(f"{x} is not {p}-integral")
    q = p**r
    return x.numerator * pow(x.denominator, -1, q) % q if q > 1 else 0


@dataclass(frozen=True)
class PExpansion:
    """Eventually periodic p-adic digit stream ``preperiod + period*``."""

    prime: int
    preperiod: tuple[int, ...]
    period: tuple[int, ...]

    def digit(self, i: int) -> int:
        if i < len(self.preperiod):
            return self.preperiod[i]
        return self.period[(i - len(self.preperiod)) % len(self.period)]

    def truncate(self, r: int) -> int:
        """Integer ``sum_{i<r} x_i p^i``."""
        return sum(self.digit(i) * self.prime**i for i in range(r))

    def value(self) -> Fraction:
        p = self.prime
        head = sum(d * p**i for i, d in enumerate(self.preperiod))
        e = len(self.period)
        block = sum(d * p**i for i, d in enumerate(self.period))
        return head + Fraction(block * p ** len(self.preperiod), 1 - p**e)


def padic_digits(x: RationalLike, p: int) -> PExpansion:
    """Digits of ``x`` in Z_p with minimal preperiod and period.

    The remainder after each digit determines the rest of the stream, so the
    first repeated remainder pins down the minimal period.
    """
    check_prime(p)
    x = Fraction(x)
    if x.denominator % p == 0:
        raise NotPIntegral(f"{x} is not {p}-integral")
    seen: dict[Fraction, int] = {}
    digits: list[int] = []
    while x not in seen:
        seen[x] = len(digits)
        d = reduce_mod_pr(x, p, 1)
        digits.append(d)
        x = (x - d) / p
    start = seen[x]
    return PExpansion(p, tuple(digits[:start]), tuple(digits[start:]))


def mult_order(p: int, d: int) -> int:
    """Smallest ``e >= 1`` with ``p**e == 1 (mod d)``."""
    if d < 1:
        raise InvalidArgument("modulus must be positive")
    if math.gcd(p, d) != 1:
        raise InvalidArgument(f"{p} is not invertible modulo {d}")
    if d == 1:
        return 1
    e, y = 1, p % d
    while y != 1:
        y = y * p % d
        e += 1
    return e


def dwork_map(gamma: RationalLike, p: int) -> Fraction:
    """The unique p-integral ``D`` with ``p*D - gamma`` in ``{0, ..., p-1}``.

    Non p-integral inputs are returned unchanged.
    """
    check_prime(p)
    gamma = Fraction(gamma)
    if gamma.denominator % p == 0:
        return gamma
    a = reduce_mod_pr(-gamma, p, 1)
    return (gamma + a) / p


def christol_reduction(gamma: RationalLike, q: int) -> int:
    """Residue of ``1 - gamma`` modulo ``q`` via Christol's closed formula."""
    gamma = Fraction(gamma)
    a, d = gamma.numerator, gamma.denominator
    if q < 1 or math.gcd(q, d) != 1 or q <= abs(a - d):
        raise InvalidArgument(f"christol_reduction needs q coprime to {d} and q > {abs(a - d)}")
    if d == 1:
        return (1 - a) % q
    delta = pow(q, -1, d)
    frac = gamma * delta - math.floor(gamma * delta)
    res = (1 - gamma) + q * frac
    if res.denominator != 1 or not 0 <= res < q:
        raise AssertionError(f"Christol formula gave {res}")
    return int(res)


@dataclass(frozen=True)
class MultClass:
    """Class of ``p**valuation * unit`` modulo ``1 + p Z_(p)``."""

    valuation: int
    unit: int
    prime: int

    def __mul__(self, other: "MultClass") -> "MultClass":
        return class_product(self, other)

    def inverse(self) -> "MultClass":
        return MultClass(-self.valuation, pow(self.unit, -1, self.prime), self.prime)

    def __truediv__(self, other: "MultClass") -> "MultClass":
        return class_product(self, other.inverse())

    def __pow__(self, k: int) -> "MultClass":
        return MultClass(self.valuation * k, pow(self.unit, k, self.prime), self.prime)

    def residue(self) -> int:
        """Reduction mod p of any representative (needs valuation >= 0)."""
        if self.valuation < 0:
            raise NotPIntegral("class has negative valuation")
        return self.unit if self.valuation == 0 else 0


def unit_class(p: int) -> MultClass:
    return MultClass(0, 1, p)


def mult_class(x: RationalLike, p: int) -> MultClass:
    check_prime(p)
    x = Fraction(x)
    if x == 0:
        raise ZeroHasNoClass("0 has no multiplicative class")
    num, den = x.numerator, x.denominator
    num, vn = _remove(num, p)
    den, vd = _remove(den, p)
    return MultClass(vn - vd, num * pow(den, -1, p) % p, p)


def class_product(a: MultClass, b: MultClass) -> MultClass:
    if a.prime != b.prime:
        raise InvalidArgument("classes for different primes")
    return MultClass(a.valuation + b.valuation, a.unit * b.unit % a.prime, a.prime)


def minus_p_power_class(e: int, p: int) -> MultClass:
    """Class of ``(-p)**e``."""
    return MultClass(e, pow(p - 1, e % 2, p) if p > 2 else 1, p)

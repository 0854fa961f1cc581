"""Polynomials over F_p, plus Laurent offsets and a degree cap.

Arithmetic is delegated to FLINT's ``nmod_poly``.  A :class:`LaurentPoly`
is ``x^offset * poly`` and only exists to carry the negative powers of x
that appear in the one-step Dwork expansions before rows are cleared.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Sequence

from flint import nmod_poly

from .errors import InvalidArgument, ResourceCap

DEFAULT_DEGREE_CAP = 10**6


def degree_cap() -> int:
    raw = os.environ.get("PFQ_CAP_DEGREE")
    if raw is None:
        return DEFAULT_DEGREE_CAP
    try:
        return int(raw)
    except ValueError as exc:
        raise InvalidArgument(f"PFQ_CAP_DEGREE={raw!r} is not an integer") from exc


def check_degree(f: nmod_poly, cap: int | None = None) -> nmod_poly:
    cap = degree_cap() if cap is None else cap
    if f.degree() > cap:
        raise ResourceCap(f"polynomial degree {f.degree()} exceeds the cap {cap}")
    return f


def poly(coeffs: Iterable[int], p: int) -> nmod_poly:
    return nmod_poly([c % p for c in coeffs], p)


def zero(p: int) -> nmod_poly:
    return nmod_poly([], p)


def monomial(c: int, k: int, p: int) -> nmod_poly:
    return nmod_poly([0] * k + [c % p], p)


def coeff_list(f: nmod_poly) -> list[int]:
    return [int(c) for c in f.coeffs()]


def inflate(f: nmod_poly, q: int) -> nmod_poly:
    """``f(x^q)``; over F_p this is ``f^q`` when ``q`` is a power of p."""
    if q == 1 or f.degree() <= 0:
        return f
    coeffs = f.coeffs()
    out = [0] * ((len(coeffs) - 1) * q + 1)
    out[::q] = [int(c) for c in coeffs]
    return nmod_poly(out, f.modulus())


def content(values: Sequence[nmod_poly]) -> nmod_poly:
    g = None
    for v in values:
        if v.is_zero():
            continue
        g = v if g is None else g.gcd(v)
        if g.degree() == 0:
            break
    return g


@dataclass(frozen=True)
class LaurentPoly:
    poly: nmod_poly
    offset: int = 0

    @classmethod
    def zero(cls, p: int) -> "LaurentPoly":
        return cls(zero(p), 0)

    @classmethod
    def monomial(cls, c: int, k: int, p: int) -> "LaurentPoly":
        return cls(nmod_poly([c % p], p), k)

    @property
    def modulus(self) -> int:
        return int(self.poly.modulus())

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def normalized(self) -> "LaurentPoly":
        if self.poly.is_zero():
            return LaurentPoly(self.poly, 0)
        coeffs = self.poly.coeffs()
        low = next(i for i, c in enumerate(coeffs) if int(c))
        if low == 0:
            return self
        return LaurentPoly(self.poly.right_shift(low), self.offset + low)

    def low_degree(self) -> int:
        return self.normalized().offset

    def high_degree(self) -> int:
        return self.offset + self.poly.degree()

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        low = min(self.offset, other.offset)
        a = self.poly.left_shift(self.offset - low)
        b = other.poly.left_shift(other.offset - low)
        return LaurentPoly(a + b, low).normalized()

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(-self.poly, self.offset)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        if self.is_zero() or other.is_zero():
            return LaurentPoly.zero(self.modulus)
        return LaurentPoly(check_degree(self.poly * other.poly), self.offset + other.offset)

    def scale(self, c: int) -> "LaurentPoly":
        return LaurentPoly(self.poly * (c % self.modulus), self.offset)

    def inflate(self, q: int) -> "LaurentPoly":
        return LaurentPoly(check_degree(inflate(self.poly, q)), self.offset * q)

    def shifted(self, k: int) -> "LaurentPoly":
        return LaurentPoly(self.poly, self.offset + k)

    def to_poly(self) -> nmod_poly:
        """The polynomial itself; fails if a negative power survives."""
        f = self.normalized()
        if f.is_zero():
            return f.poly
        if f.offset < 0:
            raise InvalidArgument("Laurent polynomial has negative powers")
        return f.poly.left_shift(f.offset)

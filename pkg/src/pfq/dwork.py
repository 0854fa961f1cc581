"""Section operators and Dwork-style congruences modulo p.

Throughout, a *scaled series* is ``H(params; (-p)^mu x)`` for an integer
``mu``, whose k-th coefficient is ``(-p)^(mu*k) h_k``.  Sections of a scaled
series are again scaled series (up to a monomial), which is what makes the
recursions below close up.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import AssumptionViolated, IterationCapExceeded, NotGoodReduction
from .exact_arith import (
    MultClass,
    check_prime,
    dwork_map,
    minus_p_power_class,
    mult_class,
    unit_class,
)
from .valuation import drifted_valuation
from .zigzag import HParams, normalize_params

DEFAULT_PAIR_CAP = 100_000


@dataclass(frozen=True)
class SectionData:
    nu0: Fraction
    nu: int
    nprime: int
    mprime: int
    vprime: int
    wprime: int


def section_data(params: HParams, p: int) -> SectionData:
    norm = normalize_params(params, p)
    nu0 = Fraction(norm.w_prime - norm.v_prime) + norm.nu0
    nu = (1 - p) * nu0
    if nu.denominator != 1:
        raise AssertionError("section exponent is not an integer")
    return SectionData(nu0, int(nu), norm.n_prime, norm.m_prime, norm.v_prime, norm.w_prime)


def section_operator(f: Sequence, p: int, r: int) -> list:
    """Coefficients ``f[r], f[r+p], f[r+2p], ...``."""
    check_prime(p)
    if not 0 <= r < p:
        raise ValueError(f"section index {r} outside [0, {p})")
    return list(f[r::p])


def dwork_params(params: HParams, p: int, r: int) -> HParams:
    """``(D_p(alpha + r), D_p(beta + r))``."""
    return HParams(
        tuple(dwork_map(a + r, p) for a in params.top),
        tuple(dwork_map(b + r, p) for b in params.bottom),
    )


def canonical_params(params: HParams, p: int, cancel: bool = False) -> HParams:
    """A representative with the same multiplicative classes of coefficients.

    Integer shifts of a non p-integral parameter only change each Pochhammer
    factor by a unit of ``1 + p Z_(p)``, so such parameters are reduced to
    their fractional part.  With ``cancel`` the common entries of top and
    bottom are dropped, which leaves the series itself unchanged.
    """
    def fold(g: Fraction) -> Fraction:
        return g - math.floor(g) if g.denominator % p == 0 else g

    top = sorted(fold(a) for a in params.top)
    bottom = sorted(fold(b) for b in params.bottom)
    if cancel:
        rest = []
        for b in bottom:
            if b in top:
                top.remove(b)
            else:
                rest.append(b)
        bottom = rest
    return HParams(tuple(top), tuple(bottom))


def head_class(params: HParams, p: int, r: int, scale: int = 0) -> MultClass:
    """Class of ``(-p)^(scale*r) h_r`` from its ``r`` Pochhammer factors."""
    cls = minus_p_power_class(scale * r, p)
    for k in range(r):
        for a in params.top:
            cls = cls * mult_class(a + k, p)
        for b in params.bottom:
            cls = cls / mult_class(b + k, p)
    return cls


def coefficient_class(params: HParams, p: int, N: int, scale: int = 0) -> MultClass:
    """Class of the N-th coefficient of ``H(params; (-p)^scale x)``.

    Peels one base-p digit of N per stage: ``(-p)^(mu r) h_r`` is multiplied
    in, the parameters move to ``D_p(params + r)`` and the scale to
    ``nu + p*mu``.
    """
    check_prime(p)
    if N < 0:
        raise ValueError("N must be nonnegative")
    nu = section_data(params, p).nu
    cls = unit_class(p)
    mu = scale
    while N:
        N, r = divmod(N, p)
        cls = cls * head_class(params, p, r, mu)
        params = canonical_params(dwork_params(params, p, r), p)
        mu = nu + p * mu
    return cls


def scaled_valuation(params: HParams, p: int, scale: int = 0):
    """Zero-drift valuation of ``H(params; (-p)^scale x)``."""
    return drifted_valuation(params, p, scale)


def is_constant_mod_p(params: HParams, p: int, scale: int = 0) -> bool:
    """Whether every coefficient of index ``>= 1`` of the scaled series vanishes mod p."""
    v1 = head_class(params, p, 1, scale).valuation
    rest = drifted_valuation(params.shift(1), p, scale).value
    return v1 + rest > 0


@dataclass(frozen=True)
class SectionResult:
    """``Lambda_r`` of a scaled series, modulo p.

    When nonzero it equals ``scalar * x^shift * H(new_params; (-p)^scale_exponent x)``.
    """

    is_zero_mod_p: bool
    scalar: Optional[MultClass] = None
    shift: int = 0
    new_params: Optional[HParams] = None
    scale_exponent: int = 0
    tail_is_one: bool = False


def _require_good(params: HParams, p: int, scale: int) -> None:
    value = scaled_valuation(params, p, scale).value
    if value < 0:
        raise NotGoodReduction(f"{params} has no good reduction at {p} (valuation {value})")


def section_decomposition(params: HParams, p: int, r: int, scale: int = 0) -> SectionResult:
    check_prime(p)
    if not 0 <= r < p:
        raise ValueError(f"section index {r} outside [0, {p})")
    _require_good(params, p, scale)
    nu = section_data(params, p).nu
    g = dwork_params(params, p, r)
    new_scale = nu + p * scale
    dv = drifted_valuation(g, p, new_scale)
    if not dv.is_finite:
        raise AssumptionViolated("section of a series with good reduction diverges")
    total = head_class(params, p, r, scale).valuation + dv.value
    if total > 0:
        return SectionResult(True)
    if total < 0:
        raise AssumptionViolated("section has a coefficient of negative valuation")
    s = dv.argmin
    scalar = coefficient_class(params, p, r + p * s, scale)
    tail = g.shift(s)
    return SectionResult(False, scalar, s, tail, new_scale, is_constant_mod_p(tail, p, new_scale))


def series_mod_p(params: HParams, p: int, K: int, scale: int = 0) -> list[int]:
    """First K coefficients of ``H(params; (-p)^scale x)`` reduced mod p."""
    check_prime(p)
    if K <= 0:
        return []
    _require_good(params, p, scale)
    out = []
    cls = unit_class(p)
    step = minus_p_power_class(scale, p)
    for k in range(K):
        if cls.valuation < 0:
            raise AssumptionViolated(f"coefficient {k} is not p-integral")
        out.append(cls.residue())
        for a in params.top:
            cls = cls * mult_class(a + k, p)
        for b in params.bottom:
            cls = cls / mult_class(b + k, p)
        cls = cls * step
    return out


def _state_key(params: HParams, p: int, scale: int, trivial: bool):
    if trivial:
        return ("one",)
    return (canonical_params(params, p, cancel=True), scale)


def are_congruent(a: HParams, b: HParams, p: int, cap: int = DEFAULT_PAIR_CAP) -> bool:
    """Decide whether the two series agree modulo p by comparing sections.

    Pairs of scaled series are processed from a queue; each section pair must
    have matching monomials, and the pair of remaining series is queued
    unless it has been seen (in either order) before.
    """
    check_prime(p)
    _require_good(a, p, 0)
    _require_good(b, p, 0)
    start = (
        _state_key(a, p, 0, is_constant_mod_p(a, p)),
        _state_key(b, p, 0, is_constant_mod_p(b, p)),
    )
    queue = deque([start])
    checked = {start}
    while queue:
        if len(checked) > cap:
            raise IterationCapExceeded(f"more than {cap} series pairs visited")
        k1, k2 = queue.popleft()
        if k1 == k2:
            continue
        if k1 == ("one",) or k2 == ("one",):
            # exactly one of the two is the constant 1
            return False
        (f1, mu1), (f2, mu2) = k1, k2
        for r in range(p):
            s1 = section_decomposition(f1, p, r, mu1)
            s2 = section_decomposition(f2, p, r, mu2)
            if s1.is_zero_mod_p or s2.is_zero_mod_p:
                if s1.is_zero_mod_p != s2.is_zero_mod_p:
                    return False
                continue
            if s1.shift != s2.shift or s1.scalar.residue() != s2.scalar.residue():
                return False
            pair = (
                _state_key(s1.new_params, p, s1.scale_exponent, s1.tail_is_one),
                _state_key(s2.new_params, p, s2.scale_exponent, s2.tail_is_one),
            )
            if pair in checked or pair[::-1] in checked:
                continue
            checked.add(pair)
            queue.append(pair)
    return True

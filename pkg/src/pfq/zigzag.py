"""Parameters, zigzag functions and the min-plus transition matrices."""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InvalidArgument, UnsupportedParameters
from .exact_arith import (
    INF,
    RationalLike,
    check_prime,
    format_rational,
    mult_order,
    parse_rational,
    reduce_mod_pr,
    valp,
)
from .tropical import TropMatrix, TropScalar, oplus


def _as_tuple(values) -> tuple[Fraction, ...]:
    if isinstance(values, str):
        values = [v for v in values.split(",") if v.strip()]
    return tuple(parse_rational(v) for v in values)


@dataclass(frozen=True)
class HParams:
    """Top and bottom parameters of ``sum_k prod (a_i)_k / prod (b_j)_k x^k``.

    There is no implicit bottom parameter 1.
    """

    top: tuple[Fraction, ...] = ()
    bottom: tuple[Fraction, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "top", _as_tuple(self.top))
        object.__setattr__(self, "bottom", _as_tuple(self.bottom))
        for g in self.top + self.bottom:
            if g.denominator == 1 and g <= 0:
                raise UnsupportedParameters(f"parameter {g} is a nonpositive integer")

    @property
    def n(self) -> int:
        return len(self.top)

    @property
    def m(self) -> int:
        return len(self.bottom)

    def shift(self, t: int) -> "HParams":
        return HParams(tuple(a + t for a in self.top), tuple(b + t for b in self.bottom))

    def sorted(self) -> "HParams":
        return HParams(tuple(sorted(self.top)), tuple(sorted(self.bottom)))

    def __str__(self):
        top = ",".join(format_rational(a) for a in self.top)
        bottom = ",".join(format_rational(b) for b in self.bottom)
        return f"H(({top});({bottom}))"


def common_denominator(values: Iterable[Fraction]) -> int:
    return math.lcm(1, *(Fraction(v).denominator for v in values))


@dataclass(frozen=True)
class NormalizedParams:
    """Parameters with the non p-integral entries stripped.

    ``val_p(h_k) = val_p(h'_k) + k * drift_delta`` where ``h'`` is the series
    of the retained parameters.
    """

    params: HParams
    prime: int
    drift_delta: Fraction
    n_prime: int
    m_prime: int
    v_prime: int
    w_prime: int

    @property
    def nu0(self) -> Fraction:
        """Critical drift of the retained parameters."""
        return Fraction(self.m_prime - self.n_prime, self.prime - 1)


def normalize_params(params: HParams, p: int) -> NormalizedParams:
    check_prime(p)
    top = tuple(a for a in params.top if valp(a, p) >= 0)
    bottom = tuple(b for b in params.bottom if valp(b, p) >= 0)
    v = sum(valp(a, p) for a in params.top if valp(a, p) < 0)
    w = sum(valp(b, p) for b in params.bottom if valp(b, p) < 0)
    return NormalizedParams(HParams(top, bottom), p, Fraction(v - w), len(top), len(bottom), v, w)


def gamma_set(params: HParams) -> tuple[tuple[Fraction, ...], int]:
    """Distinct values among ``1`` and all parameters, ``1`` first."""
    seen = dict.fromkeys((Fraction(1),) + params.top + params.bottom)
    gammas = tuple(seen)
    return gammas, len(gammas)


def _as_normalized(params, p: int | None = None) -> NormalizedParams:
    if isinstance(params, NormalizedParams):
        return params
    if p is None:
        raise InvalidArgument("a prime is needed to normalize raw parameters")
    return normalize_params(params, p)


@dataclass(frozen=True)
class ZigzagLevel:
    """Breakpoints of ``w_r`` on one period ``[0, p^r)``.

    One breakpoint per element of Gamma, sorted.  Gamma = 1 sits at 0; any
    other element whose ``1 - gamma`` vanishes mod ``p^r`` jumps at ``p^r``
    and is therefore placed there, giving an empty interval.
    """

    r: int
    prime: int
    owners: tuple[Fraction, ...]
    breakpoints: tuple[int, ...]
    jumps: tuple[int, ...]
    plateau_values: tuple[int, ...]
    n: int
    m: int

    @property
    def s(self) -> int:
        return len(self.breakpoints)

    @property
    def modulus(self) -> int:
        return self.prime**self.r

    def interval(self, i: int) -> tuple[int, int]:
        """Bounds ``[start, end)`` of ``I_{r,i}`` for ``0 <= i < s``."""
        end = self.breakpoints[i + 1] if i + 1 < self.s else self.modulus
        return self.breakpoints[i], end

    def w(self, k: int) -> int:
        q, rem = divmod(k, self.modulus)
        return self.plateau_values[bisect_right(self.breakpoints, rem) - 1] + q * (self.n - self.m)


def xi_level(params, r: int, p: int | None = None) -> ZigzagLevel:
    norm = _as_normalized(params, p)
    if r < 1:
        raise InvalidArgument("level r must be >= 1")
    p = norm.prime
    hp = norm.params
    gammas, _ = gamma_set(hp)
    q = p**r
    keyed = []
    for idx, g in enumerate(gammas):
        xi = 0 if g == 1 else (reduce_mod_pr(1 - g, p, r) or q)
        keyed.append((xi, idx, g))
    keyed.sort()
    owners = tuple(g for _, _, g in keyed)
    jumps = tuple(hp.top.count(g) - hp.bottom.count(g) for g in owners)
    plateaus = [0]
    for jump in jumps[1:]:
        plateaus.append(plateaus[-1] + jump)
    return ZigzagLevel(
        r, p, owners, tuple(x for x, _, _ in keyed), jumps, tuple(plateaus), hp.n, hp.m
    )


def w_eval(params, r: int, k: int, p: int | None = None) -> int:
    if k < 0:
        raise InvalidArgument("k must be nonnegative")
    return xi_level(params, r, p).w(k)


def transition_matrix(prev: ZigzagLevel, cur: ZigzagLevel, nu: RationalLike) -> TropMatrix:
    """``T_r`` with ``um_r = um_{r-1} (.) T_r``.

    Entry ``(j, i)`` collects the level ``r-1`` intervals ``j + c*s`` (over
    all period shifts ``c``) that sit inside ``I_{r,i}``.  The witness of an
    entry is the index offset ``c * p^(r-1)``.
    """
    if (
        cur.r != prev.r + 1
        or cur.prime != prev.prime
        or set(cur.owners) != set(prev.owners)
        or (cur.n, cur.m) != (prev.n, prev.m)
    ):
        raise InvalidArgument("inconsistent zigzag levels")
    nu = Fraction(nu)
    p, s = cur.prime, cur.s
    nu0 = Fraction(cur.m - cur.n, p - 1)
    period = prev.modulus
    shift = (nu - nu0) * period + nu0
    grid = [[TropScalar(INF) for _ in range(s)] for _ in range(s)]
    for c in range(p):
        for j in range(s):
            start, end = prev.interval(j)
            start += c * period
            end += c * period
            if start >= end:
                continue
            i = bisect_right(cur.breakpoints, start) - 1
            if end > cur.interval(i)[1]:
                raise InvalidArgument("inconsistent zigzag levels")
            entry = TropScalar(cur.plateau_values[i] + c * shift, c * period)
            grid[j][i] = oplus(grid[j][i], entry)
    return TropMatrix.from_grid(grid)


def initial_vector(level1: ZigzagLevel, nu: RationalLike) -> TropMatrix:
    """Row vector of ``min_{k in I_{1,i}} nu*k + w_1(k)`` with argmin witnesses."""
    nu = Fraction(nu)
    row = []
    for i in range(level1.s):
        start, end = level1.interval(i)
        if start >= end:
            row.append(TropScalar(INF))
            continue
        k = start if nu >= 0 else end - 1
        row.append(TropScalar(nu * k + level1.plateau_values[i], k))
    return TropMatrix.from_grid([row])


def period_data(params, p: int | None = None) -> tuple[int, int, int]:
    """``(d, e, r0)``: common denominator of Gamma, order of p mod d, and ``r0``."""
    norm = _as_normalized(params, p)
    p = norm.prime
    gammas, _ = gamma_set(norm.params)
    d = common_denominator(gammas)
    e = mult_order(p, d)
    bound = max([Fraction(1)] + [abs(1 - g) for g in gammas])
    t = 1
    while p**t <= bound:
        t += 1
    return d, e, e + t


def r0_bound(params, p: int | None = None) -> int:
    """Smallest integer above ``e + log_p max(1, |1 - gamma|)``."""
    return period_data(params, p)[2]


def as_params(top: Sequence[RationalLike] | str = (), bottom: Sequence[RationalLike] | str = ()) -> HParams:
    return HParams(_as_tuple(top), _as_tuple(bottom))

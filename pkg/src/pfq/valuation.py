"""Drifted valuations ``min_k val_p(h_k) + nu*k`` via the min-plus recurrence."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from .errors import IterationCapExceeded
from .exact_arith import INF, RationalLike, check_prime
from .tropical import TropMatrix, TropScalar, closure_with_divergence, oplus, trop_mul
from .zigzag import (
    HParams,
    NormalizedParams,
    ZigzagLevel,
    initial_vector,
    normalize_params,
    period_data,
    transition_matrix,
    xi_level,
)

DEFAULT_EXTRA_PERIODS = 64


@dataclass(frozen=True)
class DriftedValuation:
    """Result of :func:`drifted_valuation`.

    ``value`` is a Fraction or ``-math.inf``; ``argmin`` is the smallest
    index realising the minimum and is ``None`` when the value is infinite.
    """

    value: object
    argmin: Optional[int]
    p: int
    nu: Fraction

    @property
    def is_finite(self) -> bool:
        return self.value != -INF


def iterate_mu(norm: NormalizedParams, nu: Fraction) -> Iterator[tuple[ZigzagLevel, TropMatrix]]:
    """Yield ``(level_r, um_r)`` for r = 1, 2, ... on normalized parameters."""
    level = xi_level(norm, 1)
    um = initial_vector(level, nu)
    yield level, um
    while True:
        nxt = xi_level(norm, level.r + 1)
        um = trop_mul(um, transition_matrix(level, nxt, nu))
        level = nxt
        yield level, um


def _result(entry: TropScalar, p: int, nu: Fraction) -> DriftedValuation:
    if entry.value == -INF:
        return DriftedValuation(-INF, None, p, nu)
    return DriftedValuation(Fraction(entry.value), entry.witness, p, nu)


def drifted_valuation(
    params: HParams, p: int, nu: RationalLike, max_extra_periods: int = DEFAULT_EXTRA_PERIODS
) -> DriftedValuation:
    check_prime(p)
    nu = Fraction(nu)
    norm = normalize_params(params, p)
    local_nu = nu + norm.drift_delta
    nu0 = norm.nu0
    if local_nu < nu0:
        return DriftedValuation(-INF, None, p, nu)
    _, e, r0 = period_data(norm)

    if local_nu == nu0:
        levels = iterate_mu(norm, local_nu)
        for level, um in levels:
            if level.r == r0:
                break
        prev, t = level, None
        for _ in range(e):
            nxt = xi_level(norm, prev.r + 1)
            step = transition_matrix(prev, nxt, local_nu)
            t = step if t is None else trop_mul(t, step)
            prev = nxt
        closed = trop_mul(um, closure_with_divergence(t))
        return _result(oplus(um[0, 0], closed[0, 0]), p, nu)

    m = norm.m_prime
    cap = r0 + max_extra_periods * e
    for level, um in iterate_mu(norm, local_nu):
        r = level.r
        if r >= r0 and p**r * (local_nu - nu0) + nu0 >= m * e:
            head = um[0, 0].value
            if all(um[0, i].value >= head + m * e for i in range(1, um.cols)):
                return _result(um[0, 0], p, nu)
        if r > cap:
            raise IterationCapExceeded(
                f"halting criterion not met after {r} levels (cap {cap}); raise max_extra_periods"
            )
    raise AssertionError("unreachable")


def has_good_reduction(params: HParams, p: int) -> tuple[bool, DriftedValuation]:
    dv = drifted_valuation(params, p, 0)
    return dv.value >= 0, dv


def critical_drift(params: HParams, p: int) -> Fraction:
    """Drift below which the drifted valuation of the original series is -oo."""
    norm = normalize_params(params, p)
    return norm.nu0 - norm.drift_delta

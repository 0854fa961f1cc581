"""Brute-force reference computations.

Nothing here reuses the recurrence machinery; these functions are the
independent witnesses the rest of the package is tested against.
"""

from __future__ import annotations

from fractions import Fraction

from .exact_arith import valp
from .zigzag import HParams


def coefficients(params: HParams, K: int) -> list[Fraction]:
    out = []
    h = Fraction(1)
    for k in range(K):
        out.append(h)
        for a in params.top:
            h *= a + k
        for b in params.bottom:
            h /= b + k
    return out


def valuations(params: HParams, p: int, K: int) -> list[int]:
    """``val_p(h_k)`` for ``k < K`` from the valuations of the factors."""
    out = []
    v = 0
    for k in range(K):
        out.append(v)
        v += sum(valp(a + k, p) for a in params.top)
        v -= sum(valp(b + k, p) for b in params.bottom)
    return out


def truncated_profile(params: HParams, p: int, nu, K: int) -> tuple[Fraction, int]:
    nu = Fraction(nu)
    best, arg = None, None
    for k, v in enumerate(valuations(params, p, K)):
        x = v + nu * k
        if best is None or x < best:
            best, arg = x, k
    return Fraction(best), arg


def valp_via_zigzag(params: HParams, p: int, k: int) -> int:
    """Sum of ``w_r(k)`` over r, each ``w_r`` counted straight from its recurrence.

    Parameters must be p-integral.  The sum stops at the first level where
    every residue of ``-gamma`` mod ``p^r`` is at least ``k``; those residues
    only grow with r, so all later ``w_r(k)`` vanish.
    """
    total = 0
    r = 1
    while True:
        q = p**r
        gammas = params.top + params.bottom
        if all((-g.numerator * pow(g.denominator, -1, q)) % q >= k for g in gammas):
            return total
        for j in range(k):
            total += sum(1 for a in params.top if (j + a).numerator % q == 0)
            total -= sum(1 for b in params.bottom if (j + b).numerator % q == 0)
        r += 1

"""Annihilating p-polynomials of a hypergeometric series modulo p.

The orbit X collects the parameters reached by repeated Dwork maps.  Each
element of X whose series has a finite zero-drift valuation gives a
normalized series ``G_y`` (shift by the first index of minimal valuation,
divide by that coefficient); these form Y.  Splitting ``G_y`` into its p
sections expresses it through p-th powers of other ``G``'s, and iterating
this expansion ``|Y| + 1`` times yields a polynomial matrix whose kernel
annihilates ``h`` modulo p.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from flint import nmod_poly

from .dwork import (
    canonical_params,
    coefficient_class,
    dwork_params,
    head_class,
    section_data,
    series_mod_p,
)
from .errors import (
    AssumptionViolated,
    InvalidArgument,
    NoKernel,
    NotGoodReduction,
    OrbitCapExceeded,
)
from .exact_arith import check_prime
from .polyfp import LaurentPoly, check_degree, coeff_list, content, inflate, poly, zero
from .valuation import drifted_valuation, has_good_reduction
from .zigzag import HParams

DEFAULT_ORBIT_CAP = 10**5


def _order_key(h: HParams):
    return (len(h.top), len(h.bottom), h.top, h.bottom)


def orbit_X(params: HParams, p: int, cap: int = DEFAULT_ORBIT_CAP) -> list[HParams]:
    """Closure of the parameters under ``g -> D_p(g + r)``, ``0 <= r < p``."""
    check_prime(p)
    start = canonical_params(params, p)
    seen = {start}
    todo = [start]
    while todo:
        cur = todo.pop()
        for r in range(p):
            nxt = canonical_params(dwork_params(cur, p, r), p)
            if nxt not in seen:
                seen.add(nxt)
                if len(seen) > cap:
                    raise OrbitCapExceeded(f"orbit has more than {cap} elements")
                todo.append(nxt)
    return sorted(seen, key=_order_key)


@dataclass(frozen=True)
class YEntry:
    base: HParams
    t: int
    shifted: HParams = field(compare=False)


def derive_Y(X: Sequence[HParams], p: int) -> list[YEntry]:
    out = []
    for base in X:
        dv = drifted_valuation(base, p, 0)
        if dv.is_finite:
            out.append(YEntry(base, dv.argmin, base.shift(dv.argmin)))
    return out


@dataclass
class TableRow:
    """``G_y = P + sum_z Q[z] * G_z^p`` with Laurent polynomials over F_p."""

    P: LaurentPoly
    Q: dict


def _zero_drift(params: HParams, p: int) -> Fraction:
    return drifted_valuation(params, p, 0).value


def one_step_table(Y: Sequence[YEntry], p: int) -> dict:
    """Split every ``G_y`` into its sections and rewrite them through Y.

    For the digit r write ``t + r = a*p + b``.  Coefficient j of the r-th
    section is multiplicatively congruent to ``g_b * g''_{a+j} / g_t`` where
    ``g''`` is the series of ``D_p(base + b)``.  Either that section vanishes
    mod p, or it is a unit times a shifted copy of ``G_{y''}``, possibly
    with its first few terms removed when ``t'' < a``.
    """
    check_prime(p)
    for y in Y:
        if section_data(y.base, p).nu0 != 0:
            raise InvalidArgument(f"{y.base} does not have critical drift 0 at {p}")
    by_base = {y.base: y for y in Y}
    table = {}
    for y in Y:
        P = LaurentPoly.zero(p)
        Q: dict = {}
        g_t = coefficient_class(y.base, p, y.t)
        for r in range(p):
            a, b = divmod(y.t + r, p)
            base2 = canonical_params(dwork_params(y.base, p, b), p)
            g_b = head_class(y.base, p, b)
            g2_a = coefficient_class(base2, p, a)
            tail = _zero_drift(base2.shift(a), p)
            total = g_b.valuation - g_t.valuation + g2_a.valuation + tail
            if total > 0:
                continue
            if total < 0:
                raise AssumptionViolated(f"section {r} of G_{y.base} is not p-integral")
            y2 = by_base.get(base2)
            if y2 is None:
                raise AssumptionViolated(f"{base2} is missing from Y")
            c = g_b * coefficient_class(base2, p, y2.t) / g_t
            if c.valuation != 0:
                raise AssumptionViolated(
                    f"shift {y2.t} of {base2} is below the section offset {a}"
                )
            if y2.t >= a:
                term = LaurentPoly.monomial(c.residue(), r + p * (y2.t - a), p)
            else:
                # the first a - t'' terms of G_{y''} have to be taken away
                term = LaurentPoly.monomial(c.residue(), r - p * (a - y2.t), p)
                head = poly(series_mod_p(y2.shifted, p, a - y2.t), p)
                P = P - term * LaurentPoly(inflate(head, p))
            Q[y2] = Q.get(y2, LaurentPoly.zero(p)) + term
        table[y] = TableRow(P, {z: q for z, q in Q.items() if not q.is_zero()})
    return table


def row_residual(table: dict, y: YEntry, p: int, T: int) -> nmod_poly:
    """``x^k (G_y - P - sum Q G_z^p)`` modulo ``x^T``, k clearing negative powers."""
    row = table[y]
    terms = [row.P] + list(row.Q.values())
    k = max([0] + [-t.low_degree() for t in terms if not t.is_zero()])
    acc = poly(series_mod_p(y.shifted, p, T), p).left_shift(k)
    if not row.P.is_zero():
        acc -= row.P.shifted(k).to_poly()
    for z, q in row.Q.items():
        g = inflate(poly(series_mod_p(z.shifted, p, T), p), p)
        acc -= q.shifted(k).to_poly().mul_low(g, T + k)
    return acc.truncate(T)


@dataclass(frozen=True)
class AnnihilatorRelation:
    """``sum_e coeffs[e](x) * h(x)^(p^e) = 0`` in F_p[[x]]."""

    p: int
    coeffs: tuple
    polynomial: Optional[tuple] = None

    @property
    def N(self) -> int:
        return len(self.coeffs) - 1

    def to_json(self) -> dict:
        out = {"p": self.p, "N": self.N, "coeffs": [coeff_list(v) for v in self.coeffs]}
        if self.polynomial is not None:
            out["polynomial"] = list(self.polynomial)
        return out


def iterate_relations(table: dict, y0: YEntry, p: int, steps: int) -> list[TableRow]:
    """``h = P_e + sum_y Q_e[y] G_y^(p^e)`` for ``e = 0 .. steps``."""
    cur = TableRow(LaurentPoly.zero(p), {y0: LaurentPoly.monomial(1, 0, p)})
    out = [cur]
    for e in range(steps):
        q = p**e
        P = cur.P
        Q: dict = {}
        for y, coef in cur.Q.items():
            row = table[y]
            P = P + coef * row.P.inflate(q)
            for z, qz in row.Q.items():
                Q[z] = Q.get(z, LaurentPoly.zero(p)) + coef * qz.inflate(q)
        cur = TableRow(P, {z: v for z, v in Q.items() if not v.is_zero()})
        out.append(cur)
    return out


def polynomial_matrix_kernel(M: Sequence[Sequence[nmod_poly]], p: Optional[int] = None) -> list[nmod_poly]:
    """A nonzero right-kernel vector with coprime entries.

    Fraction-free elimination to reduced echelon form, taking the gcd out of
    each row as we go; the first free column gives the kernel vector, which
    is then made content free with the first nonzero entry monic.
    """
    rows = [list(r) for r in M]
    if not rows:
        raise InvalidArgument("empty matrix")
    ncols = len(rows[0])
    if any(len(r) != ncols for r in rows):
        raise InvalidArgument("ragged matrix")
    p = p if p is not None else int(rows[0][0].modulus())
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if not rows[i][col].is_zero()), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        prow = rows[rank]
        lead = prow[col]
        for i in range(len(rows)):
            if i == rank or rows[i][col].is_zero():
                continue
            other = rows[i][col]
            g = lead.gcd(other)
            u, w = lead // g, other // g
            new = [check_degree(u * x - w * y) for x, y in zip(rows[i], prow)]
            c = content(new)
            if c is not None and c.degree() > 0:
                new = [x // c for x in new]
            rows[i] = new
        pivots.append(col)
        rank += 1
    free = [c for c in range(ncols) if c not in pivots]
    if not free:
        raise NoKernel("matrix has full column rank")
    f = free[0]
    if rank == 0:
        v = [zero(p) for _ in range(ncols)]
        v[f] = poly([1], p)
        return v
    leads = [rows[i][pivots[i]] for i in range(rank)]
    L = leads[0]
    for d in leads[1:]:
        L = check_degree(L * d // L.gcd(d))
    v = [zero(p) for _ in range(ncols)]
    v[f] = L
    for i, col in enumerate(pivots):
        v[col] = -(L // leads[i]) * rows[i][f]
    c = content(v)
    v = [x // c for x in v]
    first = next(x for x in v if not x.is_zero())
    inv = pow(int(first.leading_coefficient()), -1, p)
    v = [x * inv for x in v]
    for row in M:
        acc = zero(p)
        for a, b in zip(row, v):
            acc += a * b
        if not acc.is_zero():
            raise AssertionError("kernel vector does not annihilate the matrix")
    return v


def _polynomial_case(params: HParams, p: int, nu0: Fraction) -> AnnihilatorRelation:
    """``h mod p`` is a polynomial P: return ``P(x^p) h - P(x) h^p = 0``."""
    nu = nu0 / 2
    v = drifted_valuation(params, p, nu).value
    cutoff = max(1, math.ceil((1 - v) / (-nu)))
    coeffs = series_mod_p(params, p, cutoff)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    P = check_degree(poly(coeffs, p))
    return AnnihilatorRelation(p, (check_degree(inflate(P, p)), -P), tuple(coeffs))


def annihilator(
    params: HParams, p: int, orbit_cap: int = DEFAULT_ORBIT_CAP
) -> AnnihilatorRelation:
    check_prime(p)
    good, dv = has_good_reduction(params, p)
    if not good:
        raise NotGoodReduction(f"{params} has no good reduction at {p}")
    nu0 = section_data(params, p).nu0
    if nu0 < 0:
        return _polynomial_case(params, p, nu0)

    X = orbit_X(params, p, orbit_cap)
    Y = derive_Y(X, p)
    table = one_step_table(Y, p)
    y0 = next(y for y in Y if y.base == canonical_params(params, p))
    if y0.t != 0:
        raise AssumptionViolated("the series itself should have shift 0")
    N = len(Y) + 1
    relations = iterate_relations(table, y0, p, N)

    keys: list = sorted(Y, key=lambda y: _order_key(y.base)) + [None]
    grid = []
    for key in keys:
        row = []
        for f in range(N + 1):
            rel = relations[N - f]
            entry = rel.P if key is None else rel.Q.get(key, LaurentPoly.zero(p))
            row.append(entry.inflate(p**f))
        low = min((x.low_degree() for x in row if not x.is_zero()), default=0)
        grid.append([x.shifted(-low).to_poly() if not x.is_zero() else zero(p) for x in row])
    grid = [row for row in grid if any(not x.is_zero() for x in row)]
    if not grid:
        grid = [[zero(p) for _ in range(N + 1)]]
    kernel = polynomial_matrix_kernel(grid, p)
    return AnnihilatorRelation(p, tuple(kernel))


def verify_annihilator(rel: AnnihilatorRelation, params: HParams, K: int) -> bool:
    """Check the relation on the reduction of the series modulo ``x^K``."""
    p = rel.p
    if all(v.is_zero() for v in rel.coeffs):
        raise InvalidArgument("the zero vector is not a relation")
    h = series_mod_p(params, p, K)
    acc = zero(p)
    for e, v in enumerate(rel.coeffs):
        q = p**e
        head = poly(h[: -(-K // q)], p)
        acc += v.mul_low(inflate(head, q), K) if not v.is_zero() else zero(p)
    return acc.truncate(K).is_zero()

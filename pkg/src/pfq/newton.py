"""Newton polygons as a semiring of convex regions.

A polygon with domain slope ``lam`` is the region lying on or above a finite
lower convex chain of vertices, to the right of the vertical line through the
first vertex.  It is stable under translation by ``(0, 1)`` and ``(1, -lam)``,
so its evaluation ``nu -> min (x*nu + y)`` is finite exactly for ``nu >= lam``.

Internally we shear ``y' = y + lam*x``: the second ray becomes horizontal and
the chain is the lower-left staircase of a finite point set.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import InvalidArgument, InvalidDrift, IterationCapExceeded, NeedsDomainShrink
from .exact_arith import INF, RationalLike, check_prime, format_rational
from .valuation import DEFAULT_EXTRA_PERIODS, drifted_valuation
from .zigzag import HParams, ZigzagLevel, normalize_params, period_data, xi_level

Point = tuple[Fraction, Fraction]


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _staircase(points: Iterable[Point], lam: Fraction) -> tuple[Point, ...]:
    """Vertices of the region generated by ``points`` and the two rays."""
    sheared = sorted({(Fraction(x), Fraction(y) + lam * Fraction(x)) for x, y in points})
    if not sheared:
        raise InvalidArgument("a polygon needs at least one point")
    hull: list[Point] = []
    for pt in sheared:
        if hull and hull[-1][0] == pt[0]:
            continue  # same abscissa, higher point
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], pt) <= 0:
            hull.pop()
        hull.append(pt)
    # keep the part of the lower hull that still goes down
    lowest = min(range(len(hull)), key=lambda i: (hull[i][1], i))
    chain = hull[: lowest + 1]
    return tuple((x, y - lam * x) for x, y in chain)


@dataclass(frozen=True)
class NewtonPolygon:
    domain_slope: Fraction
    vertices: tuple[Point, ...]

    @classmethod
    def hull(cls, points: Iterable[Sequence[RationalLike]], domain_slope: RationalLike) -> "NewtonPolygon":
        lam = Fraction(domain_slope)
        pts = [(Fraction(x), Fraction(y)) for x, y in points]
        return cls(lam, _staircase(pts, lam))

    def slopes(self) -> list[Fraction]:
        v = self.vertices
        return [(b[1] - a[1]) / (b[0] - a[0]) for a, b in zip(v, v[1:])]

    def translate(self, dx: RationalLike, dy: RationalLike) -> "NewtonPolygon":
        dx, dy = Fraction(dx), Fraction(dy)
        return NewtonPolygon(self.domain_slope, tuple((x + dx, y + dy) for x, y in self.vertices))

    def contains(self, point: Sequence[RationalLike]) -> bool:
        x, y = Fraction(point[0]), Fraction(point[1])
        lam = self.domain_slope
        verts = self.vertices
        if x < verts[0][0]:
            return False
        ys = y + lam * x
        for (x1, y1), (x2, y2) in zip(verts, verts[1:]):
            if x <= x2:
                s1, s2 = y1 + lam * x1, y2 + lam * x2
                return ys >= s1 + (s2 - s1) * (x - x1) / (x2 - x1)
        xl, yl = verts[-1]
        return ys >= yl + lam * xl

    def issubset(self, other: "NewtonPolygon") -> bool:
        _check_same_domain(self, other)
        return all(other.contains(v) for v in self.vertices)

    def ev(self, nu: RationalLike):
        return np_ev(self, nu)

    def to_json(self) -> dict:
        return {
            "domain_slope": format_rational(self.domain_slope),
            "vertices": [[format_rational(x), format_rational(y)] for x, y in self.vertices],
        }


def cone(x: RationalLike, y: RationalLike, domain_slope: RationalLike) -> NewtonPolygon:
    return NewtonPolygon(Fraction(domain_slope), ((Fraction(x), Fraction(y)),))


def first_quadrant() -> NewtonPolygon:
    return cone(0, 0, 0)


def _check_same_domain(a: NewtonPolygon, b: NewtonPolygon) -> None:
    if a.domain_slope != b.domain_slope:
        raise InvalidArgument(f"domain slopes differ: {a.domain_slope} vs {b.domain_slope}")


# None stands for the empty region, the zero of the semiring.


def np_oplus(a: Optional[NewtonPolygon], b: Optional[NewtonPolygon]) -> Optional[NewtonPolygon]:
    if a is None:
        return b
    if b is None:
        return a
    _check_same_domain(a, b)
    return NewtonPolygon(a.domain_slope, _staircase(a.vertices + b.vertices, a.domain_slope))


def np_odot(a: Optional[NewtonPolygon], b: Optional[NewtonPolygon]) -> Optional[NewtonPolygon]:
    if a is None or b is None:
        return None
    _check_same_domain(a, b)
    if len(b.vertices) == 1:
        return a.translate(*b.vertices[0])
    if len(a.vertices) == 1:
        return b.translate(*a.vertices[0])
    sums = [(x1 + x2, y1 + y2) for x1, y1 in a.vertices for x2, y2 in b.vertices]
    return NewtonPolygon(a.domain_slope, _staircase(sums, a.domain_slope))


def np_ev(a: Optional[NewtonPolygon], nu: RationalLike):
    """``min (x*nu + y)`` over the region; ``-inf`` below the domain slope."""
    if a is None:
        return INF
    nu = Fraction(nu)
    if nu < a.domain_slope:
        return -INF
    return min(x * nu + y for x, y in a.vertices)


def _vec_mat(vec: list, mat: list[list]) -> list:
    out = []
    for i in range(len(mat[0])):
        acc = None
        for j, x in enumerate(vec):
            acc = np_oplus(acc, np_odot(x, mat[j][i]))
        out.append(acc)
    return out


def _seed(level: ZigzagLevel, lam: Fraction) -> list:
    row = []
    for i in range(level.s):
        start, end = level.interval(i)
        if start >= end:
            row.append(None)
            continue
        w = level.plateau_values[i]
        row.append(NewtonPolygon.hull([(start, w), (end - 1, w)], lam))
    return row


def _polygon_matrix(prev: ZigzagLevel, cur: ZigzagLevel, nu0: Fraction, lam: Fraction) -> list[list]:
    """Polygon analogue of the transition matrix.

    Moving an index by ``c * p^(r-1)`` shifts the partial valuation sum by
    ``c * nu0 * (1 - p^(r-1))``, so each admissible period shift contributes
    a translated cone.
    """
    s, p = cur.s, cur.prime
    period = prev.modulus
    grid: list[list] = [[None] * s for _ in range(s)]
    for c in range(p):
        dy = c * nu0 * (1 - period)
        for j in range(s):
            start, end = prev.interval(j)
            if start >= end:
                continue
            start += c * period
            i = bisect_right(cur.breakpoints, start) - 1
            piece = cone(c * period, cur.plateau_values[i] + dy, lam)
            grid[j][i] = np_oplus(grid[j][i], piece)
    return grid


def newton_polygon(
    params: HParams,
    p: int,
    nu1: Optional[RationalLike] = None,
    max_extra_periods: int = DEFAULT_EXTRA_PERIODS,
) -> NewtonPolygon:
    """Newton polygon of the series, restricted to slopes ``>= nu1`` if given.

    Without ``nu1`` the critical drift must give a finite valuation.  With
    ``nu1`` the polygon is exact for every drift at least ``nu1`` and only
    keeps the vertices visible from there.
    """
    check_prime(p)
    norm = normalize_params(params, p)
    delta = norm.drift_delta
    nu0 = norm.nu0
    _, e, r0 = period_data(norm)

    if nu1 is None or Fraction(nu1) + delta == nu0:
        if not drifted_valuation(params, p, nu0 - delta).is_finite:
            raise NeedsDomainShrink(
                f"valuation is -inf at the critical drift {format_rational(nu0 - delta)}; "
                "pass a larger nu1"
            )
        lam = nu0
        shrunk = False
    else:
        lam = Fraction(nu1) + delta
        if lam < nu0:
            raise InvalidDrift(f"nu1 must be at least {format_rational(nu0 - delta)}")
        shrunk = True

    level = xi_level(norm, 1)
    um = _seed(level, lam)
    acc = um[0]
    m = norm.m_prime
    last = r0 + len(level.breakpoints) * e
    cap = r0 + max_extra_periods * e
    while True:
        r = level.r
        if shrunk:
            if r >= r0 and p**r * (lam - nu0) + nu0 >= m * e:
                lifted = um[0].translate(0, m * e)
                if all(x is None or x.issubset(lifted) for x in um[1:]):
                    break
            if r > cap:
                raise IterationCapExceeded(f"polygon did not stabilise within {cap} levels")
        elif r >= last:
            break
        nxt = xi_level(norm, r + 1)
        um = _vec_mat(um, _polygon_matrix(level, nxt, nu0, lam))
        level = nxt
        acc = np_oplus(acc, um[0])

    # back to the coordinates of the original series
    out = tuple((x, y + delta * x) for x, y in acc.vertices)
    return NewtonPolygon(lam - delta, out)

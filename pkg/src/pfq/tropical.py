"""Min-plus algebra over Q and +oo, with optional argmin witnesses.

A witness is an integer carried along with a value.  Under ``(.)`` witnesses
add up (so a transition entry stores an index offset) and under ``(+)`` the
smaller value wins, ties going to the smaller witness.  This is the
lexicographic min-plus semiring on pairs ``(value, witness)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

from .errors import InvalidArgument
from .exact_arith import INF


class TropScalar(NamedTuple):
    value: object = INF
    witness: Optional[int] = None

    def is_finite(self) -> bool:
        return self.value != INF and self.value != -INF


def _key(a: TropScalar):
    return (a.value, 0 if a.witness is None else a.witness)


def oplus(a: TropScalar, b: TropScalar) -> TropScalar:
    return b if _key(b) < _key(a) else a


def odot(a: TropScalar, b: TropScalar) -> TropScalar:
    if a.value == INF or b.value == INF:
        return TropScalar(INF)
    value = a.value + b.value
    if value == -INF:
        return TropScalar(-INF)
    if a.witness is None:
        return TropScalar(value, b.witness)
    if b.witness is None:
        return TropScalar(value, a.witness)
    return TropScalar(value, a.witness + b.witness)


class _Divergence:
    """Marker returned when a weak closure does not converge."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "DIVERGENCE"


DIVERGENCE = _Divergence()


@dataclass(frozen=True)
class TropMatrix:
    entries: tuple[tuple[TropScalar, ...], ...]

    @classmethod
    def from_grid(cls, grid) -> "TropMatrix":
        rows = tuple(
            tuple(x if isinstance(x, TropScalar) else TropScalar(x) for x in row) for row in grid
        )
        if len({len(r) for r in rows}) > 1:
            raise InvalidArgument("ragged matrix")
        return cls(rows)

    @classmethod
    def identity(cls, n: int) -> "TropMatrix":
        return cls.from_grid([[0 if i == j else INF for j in range(n)] for i in range(n)])

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def values(self) -> list[list]:
        return [[x.value for x in row] for row in self.entries]

    def witnesses(self) -> list[list]:
        return [[x.witness for x in row] for row in self.entries]

    def __getitem__(self, ij) -> TropScalar:
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other: "TropMatrix") -> "TropMatrix":
        return trop_mul(self, other)


def trop_mul(a: TropMatrix, b: TropMatrix) -> TropMatrix:
    if a.cols != b.rows:
        raise InvalidArgument(f"dimension mismatch {a.rows}x{a.cols} (.) {b.rows}x{b.cols}")
    grid = []
    for row in a.entries:
        out = []
        for k in range(b.cols):
            acc = TropScalar(INF)
            for j, x in enumerate(row):
                acc = oplus(acc, odot(x, b.entries[j][k]))
            out.append(acc)
        grid.append(out)
    return TropMatrix.from_grid(grid)


def trop_add(a: TropMatrix, b: TropMatrix) -> TropMatrix:
    if (a.rows, a.cols) != (b.rows, b.cols):
        raise InvalidArgument("dimension mismatch")
    return TropMatrix.from_grid(
        [[oplus(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(a.entries, b.entries)]
    )


def _floyd_warshall(t: TropMatrix) -> tuple[list[list[TropScalar]], list[int]]:
    if t.rows != t.cols:
        raise InvalidArgument("weak closure needs a square matrix")
    n = t.rows
    d = [list(row) for row in t.entries]
    for k in range(n):
        dk = d[k]
        for i in range(n):
            dik = d[i][k]
            if dik.value == INF:
                continue
            di = d[i]
            for j in range(n):
                di[j] = oplus(di[j], odot(dik, dk[j]))
    negative = [i for i in range(n) if d[i][i].value < 0]
    return d, negative


def weak_closure(t: TropMatrix):
    """``T (+) T^2 (+) T^3 (+) ...`` or :data:`DIVERGENCE` on a negative cycle."""
    d, negative = _floyd_warshall(t)
    if negative:
        return DIVERGENCE
    return TropMatrix.from_grid(d)


def closure_with_divergence(t: TropMatrix) -> TropMatrix:
    """Weak closure where entries reachable through a negative cycle become -oo."""
    d, negative = _floyd_warshall(t)
    n = t.rows
    for c in negative:
        for i in range(n):
            if d[i][c].value == INF:
                continue
            for j in range(n):
                if d[c][j].value != INF:
                    d[i][j] = TropScalar(-INF)
    return TropMatrix.from_grid(d)


def row_vector(values: Sequence) -> TropMatrix:
    return TropMatrix.from_grid([list(values)])

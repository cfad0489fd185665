"""Exact dense linear algebra over the rationals.

Just enough row reduction to support socle computations, span membership
tests and rank checks. Everything is converted to Fraction on the way in;
floating point never appears.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Vector = tuple[Fraction, ...]


def _vec(values: Sequence) -> list[Fraction]:
    return [Fraction(v) for v in values]


class SpanBasis:
    """Row space built incrementally, kept in reduced echelon form."""

    def __init__(self, width: int):
        self.width = width
        self.rows: list[list[Fraction]] = []
        self.pivots: list[int] = []

    def _residue(self, vec: Sequence) -> list[Fraction]:
        v = _vec(vec)
        if len(v) != self.width:
            raise ValueError("vector width mismatch")
        for row, p in zip(self.rows, self.pivots):
            if v[p]:
                c = v[p]
                for j in range(self.width):
                    v[j] -= c * row[j]
        return v

    def contains(self, vec: Sequence) -> bool:
        return not any(self._residue(vec))

    def add(self, vec: Sequence) -> bool:
        """Insert ``vec`` into the span; return True when the span grew."""
        v = self._residue(vec)
        pivot = next((j for j, x in enumerate(v) if x), None)
        if pivot is None:
            return False
        c = v[pivot]
        v = [x / c for x in v]
        for row in self.rows:
            f = row[pivot]
            if f:
                for j in range(self.width):
                    row[j] -= f * v[j]
        at = next((k for k, p in enumerate(self.pivots) if p > pivot), len(self.pivots))
        self.rows.insert(at, v)
        self.pivots.insert(at, pivot)
        return True

    @property
    def dim(self) -> int:
        return len(self.rows)

    def basis_rows(self) -> tuple[Vector, ...]:
        return tuple(tuple(r) for r in self.rows)


def rank(rows: Iterable[Sequence]) -> int:
    rows = list(rows)
    if not rows:
        return 0
    sb = SpanBasis(len(rows[0]))
    for r in rows:
        sb.add(r)
    return sb.dim


def nullspace(rows: Sequence[Sequence], width: int | None = None) -> list[Vector]:
    """Basis of ``{x : A x = 0}`` for the matrix ``A`` with the given rows."""
    mat = [_vec(r) for r in rows]
    if width is None:
        if not mat:
            raise ValueError("width required for an empty matrix")
        width = len(mat[0])
    if any(len(r) != width for r in mat):
        raise ValueError("ragged matrix")
    mat = [r for r in mat if any(r)]
    reduced: list[list[Fraction]] = []
    pivots: list[int] = []
    for col in range(width):
        pr = None
        for r in mat:
            if r[col]:
                pr = r
                break
        if pr is None:
            continue
        mat.remove(pr)
        c = pr[col]
        pr = [x / c for x in pr]
        mat = [[rj - r[col] * pj for rj, pj in zip(r, pr)] for r in mat]
        for r2 in reduced:
            f = r2[col]
            if f:
                for j in range(width):
                    r2[j] -= f * pr[j]
        reduced.append(pr)
        pivots.append(col)
    free = [j for j in range(width) if j not in pivots]
    out: list[Vector] = []
    for f in free:
        x = [Fraction(0)] * width
        x[f] = Fraction(1)
        for r, p in zip(reduced, pivots):
            x[p] = -r[f]
        out.append(tuple(x))
    return out


def inverse(rows: Sequence[Sequence]) -> tuple[Vector, ...]:
    """Exact inverse of a square matrix; raises ValueError when singular."""
    n = len(rows)
    aug = []
    for i, r in enumerate(rows):
        r = _vec(r)
        if len(r) != n:
            raise ValueError("matrix must be square")
        aug.append(r + [Fraction(1 if j == i else 0) for j in range(n)])
    for col in range(n):
        piv = next((i for i in range(col, n) if aug[i][col]), None)
        if piv is None:
            raise ValueError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        c = aug[col][col]
        aug[col] = [x / c for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col]:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
    return tuple(tuple(r[n:]) for r in aug)

"""Dense exact linear algebra over a field: rref, row-space tests, kernels.

Matrices are immutable.  The reduced row echelon form with zero rows removed
is the canonical representative of a row space: two matrices span the same
subspace exactly when their rref grids are equal, which makes subspaces
hashable and diffable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .fields import Field, PrimeField, QQ, Rationals


@dataclass(frozen=True)
class Matrix:
    """Row-major grid of exact scalars over ``field``."""

    field: Field
    ncols: int
    rows: tuple[tuple, ...]

    def __post_init__(self):
        for row in self.rows:
            if len(row) != self.ncols:
                raise ValueError(f"row length {len(row)} != ncols {self.ncols}")

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence], ncols: int | None = None) -> Matrix:
        rows = tuple(tuple(r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(rows[0])
        return cls(field, ncols, rows)

    @classmethod
    def from_ints(cls, field: Field, rows: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
        conv = field.from_int
        return cls.from_rows(field, [[conv(x) for x in r] for r in rows], ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def to_int_grid(self) -> list[list]:
        return [list(r) for r in self.rows]

    def format_grid(self) -> list[list[str]]:
        fmt = self.field.format_scalar
        return [[fmt(x) for x in row] for row in self.rows]


def rref(m: Matrix) -> Matrix:
    """Reduced row echelon form with zero rows removed.

    Pivots are 1, pivot columns are elsewhere zero, and rows are ordered by
    pivot column, so equal row spaces produce identical grids.
    """
    field = m.field
    zero, one = field.zero, field.one
    rows = [list(r) for r in m.rows]
    nrows = len(rows)
    pivot = 0
    for col in range(m.ncols):
        hit = None
        for i in range(pivot, nrows):
            if rows[i][col] != zero:
                hit = i
                break
        if hit is None:
            continue
        rows[pivot], rows[hit] = rows[hit], rows[pivot]
        lead = rows[pivot][col]
        if lead != one:
            rows[pivot] = field.row_scale(rows[pivot], field.inv(lead))
        prow = rows[pivot]
        for i in range(nrows):
            if i == pivot:
                continue
            f = rows[i][col]
            if f != zero:
                rows[i] = field.row_submul(rows[i], f, prow)
        pivot += 1
        if pivot == nrows:
            break
    return Matrix(field, m.ncols, tuple(tuple(r) for r in rows[:pivot]))


def rank(m: Matrix) -> int:
    return rref(m).nrows


def pivot_columns(reduced: Matrix) -> list[int]:
    """Leading-entry columns of an already reduced matrix."""
    zero = reduced.field.zero
    cols = []
    for row in reduced.rows:
        for j, x in enumerate(row):
            if x != zero:
                cols.append(j)
                break
    return cols


def subspace_equal(a: Matrix, b: Matrix) -> bool:
    """True iff the row spaces of ``a`` and ``b`` coincide."""
    if a.field != b.field:
        raise ValueError(f"field mismatch: {a.field!r} vs {b.field!r}")
    if a.ncols != b.ncols:
        raise ValueError(f"column count mismatch: {a.ncols} vs {b.ncols}")
    return rref(a).rows == rref(b).rows


def in_span(v: Sequence, m: Matrix) -> bool:
    """True iff row vector ``v`` lies in the row space of ``m``."""
    if len(v) != m.ncols:
        raise ValueError(f"vector length {len(v)} != ncols {m.ncols}")
    field = m.field
    zero = field.zero
    reduced = rref(m)
    residue = list(v)
    for row, col in zip(reduced.rows, pivot_columns(reduced)):
        f = residue[col]
        if f != zero:
            residue = field.row_submul(residue, f, row)
    return all(x == zero for x in residue)


def nullspace(m: Matrix) -> Matrix:
    """Canonical (rref) basis of ``{x : m @ x = 0}`` as rows."""
    field = m.field
    zero, one = field.zero, field.one
    reduced = rref(m)
    pivots = pivot_columns(reduced)
    pivot_set = set(pivots)
    free = [j for j in range(m.ncols) if j not in pivot_set]
    basis = []
    for fc in free:
        vec = [zero] * m.ncols
        vec[fc] = one
        for row, pc in zip(reduced.rows, pivots):
            vec[pc] = field.neg(row[fc])
        basis.append(tuple(vec))
    return rref(Matrix(field, m.ncols, tuple(basis)))


def reduce_mod(m: Matrix, target: PrimeField) -> Matrix:
    """Entrywise reduction of a rational matrix into GF(p).

    Denominators must be invertible mod p; at desk scale all entries are
    small, so that is never an issue for a large p.
    """
    if not isinstance(m.field, Rationals):
        raise ValueError("reduce_mod expects a matrix over the rationals")
    p = target.modulus
    rows = []
    for row in m.rows:
        out = []
        for x in row:
            den = x.denominator % p
            if den == 0:
                raise ZeroDivisionError(f"denominator of {x} vanishes mod {p}")
            out.append(x.numerator % p * pow(den, -1, p) % p)
        rows.append(tuple(out))
    return Matrix(target, m.ncols, tuple(rows))


def identity_matrix(field: Field, n: int) -> Matrix:
    zero, one = field.zero, field.one
    return Matrix(field, n, tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)))


__all__ = [
    "Matrix",
    "rref",
    "rank",
    "pivot_columns",
    "subspace_equal",
    "in_span",
    "nullspace",
    "reduce_mod",
    "identity_matrix",
    "QQ",
]

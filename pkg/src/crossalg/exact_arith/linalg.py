"""Dense exact linear algebra over Q(i) or Q(w_N).

Vectors are tuples of scalars. Matrices are :class:`Matrix` values or plain
sequences of rows; every routine accepts either.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..errors import DimensionMismatch, MixedScalarFields, NoSolution
from .scalars import field_of

Vector = tuple


@dataclass(frozen=True)
class Matrix:
    rows: int
    cols: int
    entries: tuple  # row-major, length rows*cols

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch(
                f'{len(self.entries)} entries for a {self.rows}x{self.cols} matrix')
        check_field(self.entries)

    @classmethod
    def from_rows(cls, rows, cols: int | None = None) -> Matrix:
        rows = [tuple(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise DimensionMismatch('ragged rows')
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    @classmethod
    def identity(cls, n: int, one=1, zero=0) -> Matrix:
        return cls(n, n, tuple(one if i == j else zero for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int, zero=0) -> Matrix:
        return cls(rows, cols, (zero,) * (rows * cols))

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[Vector]:
        return [self.row(i) for i in range(self.rows)]

    def transpose(self) -> Matrix:
        return Matrix.from_rows([tuple(self.entries[i * self.cols + j] for i in range(self.rows))
                                 for j in range(self.cols)], self.rows)

    def __matmul__(self, v):
        if isinstance(v, Matrix):
            if self.cols != v.rows:
                raise DimensionMismatch('inner dimensions differ')
            cols = v.transpose().to_rows()
            return Matrix.from_rows([[dot(r, c) for c in cols] for r in self.to_rows()], v.cols)
        return mat_vec(self, v)


def check_field(entries):
    """Raise MixedScalarFields unless all entries share one scalar field."""
    tag = None
    for x in entries:
        t = field_of(x)
        if t is None:
            continue
        if tag is None:
            tag = t
        elif t != tag:
            raise MixedScalarFields(f'entries from {tag} and {t}')
    return tag


def _rows_of(M) -> tuple[list[list], int]:
    if isinstance(M, Matrix):
        return [list(M.row(i)) for i in range(M.rows)], M.cols
    rows = [list(r) for r in M]
    cols = len(rows[0]) if rows else 0
    for r in rows:
        if len(r) != cols:
            raise DimensionMismatch('ragged rows')
    return rows, cols


def dot(u, v):
    if len(u) != len(v):
        raise DimensionMismatch(f'lengths {len(u)} and {len(v)}')
    acc = 0
    for a, b in zip(u, v):
        if a and b:
            acc = acc + a * b
    return acc


def mat_vec(M, v) -> Vector:
    rows, cols = _rows_of(M)
    if len(v) != cols:
        raise DimensionMismatch(f'vector of length {len(v)} for {cols} columns')
    return tuple(dot(r, v) for r in rows)


def rref(M, cols: int | None = None) -> tuple[list[Vector], list[int]]:
    """Reduced row-echelon form.

    Returns the nonzero rows (pivot entries equal to 1) and their pivot
    columns. ``cols`` is needed only when ``M`` is an empty list of rows.
    """
    rows, ncols = _rows_of(M)
    if cols is not None and rows and ncols != cols:
        raise DimensionMismatch('column count mismatch')
    check_field(x for r in rows for x in r)
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pr = rows[r]
        inv = _inverse(pr[c])
        if pr[c] != 1:
            pr = rows[r] = [x * inv if x else x for x in pr]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    ri = rows[i]
                    rows[i] = [a - f * b if b else a for a, b in zip(ri, pr)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return [tuple(row) for row in rows[:r]], pivots


def _inverse(x):
    if isinstance(x, int):
        return Fraction(1, x)
    return 1 / x


def rank(M) -> int:
    return len(rref(M)[1])


def kernel(M, cols: int | None = None, zero=0, one=1) -> list[Vector]:
    """Basis of {v : M v = 0}, one vector per free column (RREF order)."""
    rows, ncols = _rows_of(M)
    if cols is not None:
        ncols = cols if not rows else ncols
    red, pivots = rref(rows, ncols) if rows else ([], [])
    if rows:
        zero, one = _field_constants(rows, zero, one)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [zero] * ncols
        v[free] = one
        for row, pc in zip(red, pivots):
            if row[free]:
                v[pc] = -row[free]
        basis.append(tuple(v))
    return basis


def _field_constants(rows, zero, one):
    for r in rows:
        for x in r:
            if field_of(x) is not None:
                return x * 0, x * 0 + 1
    return zero, one


def solve_linear(M, b) -> Vector:
    """Some exact solution of M x = b; raises NoSolution if inconsistent."""
    rows, ncols = _rows_of(M)
    if len(b) != len(rows):
        raise DimensionMismatch(f'rhs of length {len(b)} for {len(rows)} rows')
    aug = [r + [bi] for r, bi in zip(rows, b)]
    red, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        raise NoSolution('inconsistent system')
    zero, _ = _field_constants(aug, 0, 1)
    x = [zero] * ncols
    for row, pc in zip(red, pivots):
        x[pc] = row[ncols]
    return tuple(x)


def span_membership(basis: Sequence[Vector], v: Vector):
    """Return ``(True, coords)`` if v is in span(basis), else ``(False, None)``."""
    for b in basis:
        if len(b) != len(v):
            raise DimensionMismatch('basis and vector dimensions differ')
    if not basis:
        return (not any(v)), (() if not any(v) else None)
    # columns of the system are the basis vectors
    M = [[b[i] for b in basis] for i in range(len(v))]
    try:
        return True, solve_linear(M, v)
    except NoSolution:
        return False, None


def canonical_basis(vectors: Sequence[Vector], dim: int) -> tuple[Vector, ...]:
    """RREF basis of the span; equal spans give identical tuples."""
    if not vectors:
        return ()
    red, _ = rref(list(vectors), dim)
    return tuple(red)


def span_equal(a: Sequence[Vector], b: Sequence[Vector], dim: int) -> bool:
    return canonical_basis(a, dim) == canonical_basis(b, dim)


def span_contains(big: Sequence[Vector], small: Sequence[Vector], dim: int) -> bool:
    return len(canonical_basis(list(big) + list(small), dim)) == len(canonical_basis(big, dim))


def linear_combination(coeffs, vectors, dim: int, zero=0) -> Vector:
    out = [zero] * dim
    for c, v in zip(coeffs, vectors):
        if c:
            for i, x in enumerate(v):
                if x:
                    out[i] = out[i] + c * x
    return tuple(out)


class EchelonSpan:
    """Incrementally grown span; rows are kept reduced against earlier pivots."""

    def __init__(self, dim: int):
        self.dim = dim
        self.rows: list[list] = []
        self.pivots: list[int] = []

    def reduce(self, v) -> list:
        v = list(v)
        for pc, row in zip(self.pivots, self.rows):
            f = v[pc]
            if f:
                v = [a - f * b if b else a for a, b in zip(v, row)]
        return v

    def add(self, v) -> bool:
        """Add v to the span; True if the span grew."""
        if len(v) != self.dim:
            raise DimensionMismatch(f'vector of length {len(v)} for dimension {self.dim}')
        r = self.reduce(v)
        pc = next((i for i, x in enumerate(r) if x), None)
        if pc is None:
            return False
        inv = _inverse(r[pc])
        self.rows.append([x * inv if x else x for x in r])
        self.pivots.append(pc)
        return True

    def __contains__(self, v) -> bool:
        return not any(self.reduce(v))

    def __len__(self):
        return len(self.rows)

    def basis(self) -> tuple:
        """The canonical (RREF) basis of the span."""
        return canonical_basis([tuple(r) for r in self.rows], self.dim)

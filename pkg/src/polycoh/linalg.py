"""Exact dense linear algebra over the rationals and odd prime fields.

Determinants, ranks and kernel bases computed without any floating point.
Over the rationals, :func:`rank` clears denominators row by row and runs
fraction-free (Bareiss) elimination, so every intermediate value is an
integer minor of the scaled matrix and coefficient swell stays polynomial.
Over a prime field, ordinary Gaussian elimination is exact already.

Pivoting always takes the first nonzero entry in column order, so repeated
runs are bit-for-bit reproducible.  All operations are pure; a
:class:`Matrix` is immutable once built and safe to share between workers.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, List, Optional, Sequence

from .fields import QQ, PrimeField, Rationals


class DimensionError(ValueError):
    """Raised when matrix shapes do not match an operation's contract."""


class Matrix:
    """A dense matrix with entries in a single exact field.

    >>> m = Matrix.from_rows([[1, 2], [3, 4]], QQ)
    >>> det(m)
    Fraction(-2, 1)
    """

    __slots__ = ("rows", "cols", "entries", "field")

    def __init__(self, entries, field):
        self.entries = tuple(tuple(row) for row in entries)
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.rows else 0
        if any(len(row) != self.cols for row in self.entries):
            raise DimensionError("ragged rows")
        self.field = field

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], field) -> "Matrix":
        return cls([[field(x) for x in row] for row in rows], field)

    @classmethod
    def identity(cls, n: int, field) -> "Matrix":
        one, zero = field.one, field.zero
        return cls([[one if i == j else zero for j in range(n)]
                    for i in range(n)], field)

    @classmethod
    def zero(cls, rows: int, cols: int, field) -> "Matrix":
        z = field.zero
        return cls([[z] * cols for _ in range(rows)], field)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int):
        return self.entries[i]

    def column(self, j: int):
        return tuple(row[j] for row in self.entries)

    def transpose(self) -> "Matrix":
        return Matrix(zip(*self.entries), self.field) if self.rows else self

    def __mul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionError(
                f"cannot multiply {self.rows}x{self.cols} by "
                f"{other.rows}x{other.cols}")
        ot = list(zip(*other.entries))
        return Matrix(
            [[_dot(r, c) for c in ot] for r in self.entries], self.field)

    def matvec(self, v: Sequence) -> list:
        if self.cols != len(v):
            raise DimensionError("vector length does not match columns")
        return [_dot(row, v) for row in self.entries]

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.entries == other.entries)

    def __hash__(self):
        return hash(self.entries)

    def is_zero(self) -> bool:
        z = self.field.zero
        return all(x == z for row in self.entries for x in row)

    def augment(self, columns: "Matrix") -> "Matrix":
        if columns.rows != self.rows:
            raise DimensionError("row counts differ")
        return Matrix([r + c for r, c in zip(self.entries, columns.entries)],
                      self.field)

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols} over {self.field.name})"


def _dot(r, c):
    it = iter(zip(r, c))
    a, b = next(it)
    acc = a * b
    for a, b in it:
        acc += a * b
    return acc


def det(m: Matrix):
    """Exact determinant of a square matrix.

    Plain elimination with exact division; intended for the small square
    matrices of this package (parameter minors, symmetric-square blocks).
    """
    if m.rows != m.cols:
        raise DimensionError(f"determinant of a {m.rows}x{m.cols} matrix")
    n = m.rows
    if n == 0:
        return m.field.one
    a = [list(row) for row in m.entries]
    zero = m.field.zero
    sign = 1
    result = m.field.one
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != zero), None)
        if piv is None:
            return zero
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            sign = -sign
        pivot = a[c][c]
        result = result * pivot
        for r in range(c + 1, n):
            if a[r][c] != zero:
                f = a[r][c] / pivot
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return result if sign == 1 else -result


def _integer_rows(m: Matrix) -> List[List[int]]:
    """Scale each row of a rational matrix to a primitive integer row."""
    out = []
    for row in m.entries:
        lcm = 1
        for x in row:
            d = x.denominator
            lcm = lcm // gcd(lcm, d) * d
        ints = [int(x * lcm) for x in row]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if g > 1:
            ints = [v // g for v in ints]
        out.append(ints)
    return out


def _bareiss_rank(a: List[List[int]]) -> int:
    """Fraction-free elimination on integer rows; returns the rank."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    prev = 1
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
        pivot = a[r][c]
        prow = a[r]
        for i in range(r + 1, rows):
            irow = a[i]
            f = irow[c]
            if f == 0:
                if pivot != prev:
                    for j in range(c + 1, cols):
                        irow[j] = irow[j] * pivot // prev
            else:
                for j in range(c + 1, cols):
                    irow[j] = (irow[j] * pivot - f * prow[j]) // prev
            irow[c] = 0
        prev = pivot
        r += 1
        if r == rows:
            break
    return r


def _gauss_rank_mod(a: List[List[int]], q: int) -> int:
    rows = len(a)
    cols = len(a[0]) if rows else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] % q), None)
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, q)
        prow = a[r]
        for i in range(r + 1, rows):
            f = a[i][c] * inv % q
            if f:
                irow = a[i]
                for j in range(c, cols):
                    irow[j] = (irow[j] - f * prow[j]) % q
        r += 1
        if r == rows:
            break
    return r


def rank(m: Matrix) -> int:
    """Exact rank over the matrix's field.

    Rational matrices are reduced with fraction-free elimination on
    denominator-cleared rows; prime-field matrices with modular Gauss.
    """
    if m.rows == 0 or m.cols == 0:
        return 0
    if isinstance(m.field, Rationals):
        return _bareiss_rank(_integer_rows(m))
    q = m.field.q
    return _gauss_rank_mod([[x.value for x in row] for row in m.entries], q)


def _rref(entries, field):
    """Reduced row echelon form over the field; returns (rows, pivot cols)."""
    a = [list(row) for row in entries]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    zero, one = field.zero, field.one
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != zero), None)
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
        inv = one / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != zero:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def kernel_basis(m: Matrix) -> List[list]:
    """Basis of the right kernel { v : m v = 0 }.

    Each basis vector is normalized so that its first nonzero entry is one;
    the list has length ``cols - rank``.
    """
    if m.cols == 0:
        return []
    if m.rows == 0:
        basis = []
        for c in range(m.cols):
            v = [m.field.zero] * m.cols
            v[c] = m.field.one
            basis.append(v)
        return basis
    red, pivots = _rref(m.entries, m.field)
    zero, one = m.field.zero, m.field.one
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [zero] * m.cols
        v[fc] = one
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        lead = next(x for x in v if x != zero)
        if lead != one:
            v = [x / lead for x in v]
        basis.append(v)
    return basis


def solve(m: Matrix, b: Sequence) -> Optional[list]:
    """One exact solution of m x = b, or None if the system is inconsistent."""
    if len(b) != m.rows:
        raise DimensionError("right-hand side length does not match rows")
    aug = [list(row) + [bv] for row, bv in zip(m.entries, b)]
    red, pivots = _rref(aug, m.field)
    zero = m.field.zero
    if m.cols in pivots:
        return None
    x = [zero] * m.cols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][m.cols]
    return x


def inverse(m: Matrix) -> Matrix:
    """Exact inverse of a square matrix; raises on singular input."""
    if m.rows != m.cols:
        raise DimensionError("only square matrices have inverses")
    aug = m.augment(Matrix.identity(m.rows, m.field))
    red, pivots = _rref(aug.entries, m.field)
    if pivots != list(range(m.rows)):
        raise ValueError("matrix is singular")
    return Matrix([row[m.rows:] for row in red], m.field)


def rank_of_rows(rows: Sequence[Sequence], field) -> int:
    """Rank of a plain list of row vectors (convenience wrapper)."""
    if not rows:
        return 0
    return rank(Matrix(rows, field))

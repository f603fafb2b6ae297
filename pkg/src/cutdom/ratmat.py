"""Exact rational scalars, vectors and matrices.

Scalars are :class:`fractions.Fraction` values.  Vectors are tuples of
fractions and matrices are sequences of such tuples.  Elimination is done on
integer rows with fraction-free (Bareiss) pivoting.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Rational = Fraction
RatVector = tuple  # tuple[Fraction, ...]
RatMatrix = Sequence  # Sequence[RatVector]


def as_rational(value) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_rational(q) -> str:
    q = as_rational(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def vector(values: Iterable) -> tuple:
    return tuple(as_rational(v) for v in values)


def integer_row(row: Sequence) -> list[int]:
    """Scale a rational row by a positive factor so that it becomes a
    primitive integer row (entries coprime).  The zero row maps to zeros."""
    den = 1
    for q in row:
        den = lcm(den, as_rational(q).denominator)
    ints = [int(as_rational(q) * den) for q in row]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    return ints


def _bareiss_echelon(a: list[list[int]]) -> tuple[int, list[int]]:
    """In-place fraction-free row echelon form; returns (rank, pivot columns)."""
    nrows = len(a)
    if nrows == 0:
        return 0, []
    ncols = len(a[0])
    r = 0
    prev = 1
    pivots = []
    for col in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][col] != 0), None)
        if p is None:
            continue
        if p != r:
            a[p], a[r] = a[r], a[p]
        piv_row = a[r]
        piv = piv_row[col]
        for i in range(r + 1, nrows):
            row = a[i]
            f = row[col]
            for j in range(col + 1, ncols):
                row[j] = (piv * row[j] - f * piv_row[j]) // prev
            row[col] = 0
        prev = piv
        pivots.append(col)
        r += 1
    return r, pivots


def rank(m: RatMatrix) -> int:
    """Dimension of the row space of ``m`` over the rationals."""
    rows = [integer_row(row) for row in m]
    if not rows:
        return 0
    width = len(rows[0])
    if any(len(row) != width for row in rows):
        raise ValueError("all rows must have the same length")
    return _bareiss_echelon(rows)[0]


def transpose(m: RatMatrix) -> list[tuple]:
    if not m:
        return []
    return [tuple(col) for col in zip(*m)]


def solve(m: RatMatrix, rhs: Sequence) -> tuple | None:
    """Unique solution of ``m x = rhs``; None when the system is inconsistent
    or its solution is not unique."""
    n_rows = len(m)
    if n_rows != len(rhs):
        raise ValueError("right-hand side length mismatch")
    if n_rows == 0:
        return None
    n_cols = len(m[0])
    aug = [[as_rational(v) for v in row] + [as_rational(b)] for row, b in zip(m, rhs)]
    r = 0
    pivots = []
    for col in range(n_cols):
        p = next((i for i in range(r, n_rows) if aug[i][col] != 0), None)
        if p is None:
            continue
        aug[p], aug[r] = aug[r], aug[p]
        piv = aug[r][col]
        pr = [v / piv for v in aug[r]]
        aug[r] = pr
        for i in range(n_rows):
            if i != r and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], pr)]
        pivots.append(col)
        r += 1
        if r == n_rows:
            break
    if any(aug[i][-1] != 0 for i in range(r, n_rows)):
        return None
    if r < n_cols:
        return None
    x = [Fraction(0)] * n_cols
    for i, col in enumerate(pivots):
        x[col] = aug[i][-1]
    return tuple(x)


def solve_square_integer(a: Sequence[Sequence[int]], b: Sequence[int]) -> tuple[list[int], int] | None:
    """Solve a square integer system by fraction-free Gauss-Jordan elimination.

    Returns ``(numerators, denominator)`` with a positive common denominator,
    or None for a singular matrix.
    """
    n = len(a)
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    prev = 1
    for k in range(n):
        p = next((i for i in range(k, n) if aug[i][k] != 0), None)
        if p is None:
            return None
        if p != k:
            aug[p], aug[k] = aug[k], aug[p]
        pk = aug[k]
        piv = pk[k]
        for i in range(n):
            if i == k:
                continue
            row = aug[i]
            f = row[k]
            aug[i] = [(piv * x - f * y) // prev for x, y in zip(row, pk)]
        prev = piv
    den = aug[0][0] if n else 1
    nums = [aug[i][n] for i in range(n)]
    if den < 0:
        den = -den
        nums = [-x for x in nums]
    return nums, den


class EchelonBasis:
    """Incrementally maintained row-echelon basis of integer vectors.

    ``add`` reports whether a vector enlarges the span and, if so, keeps it.
    """

    def __init__(self, width: int):
        self.width = width
        self._rows: list[tuple[int, list[int]]] = []  # (pivot col, row)

    def __len__(self) -> int:
        return len(self._rows)

    @property
    def rank(self) -> int:
        return len(self._rows)

    def reduce(self, vec: Sequence) -> list[int]:
        v = integer_row(vec) if not all(type(x) is int for x in vec) else list(vec)
        for col, row in self._rows:
            f = v[col]
            if f:
                p = row[col]
                v = [p * a - f * b for a, b in zip(v, row)]
                g = 0
                for a in v:
                    g = gcd(g, a)
                if g > 1:
                    v = [a // g for a in v]
        return v

    def contains(self, vec: Sequence) -> bool:
        return not any(self.reduce(vec))

    def add(self, vec: Sequence) -> bool:
        v = self.reduce(vec)
        col = next((j for j, a in enumerate(v) if a), None)
        if col is None:
            return False
        if v[col] < 0:
            v = [-a for a in v]
        self._rows.append((col, v))
        return True

    def copy(self) -> "EchelonBasis":
        other = EchelonBasis(self.width)
        other._rows = list(self._rows)
        return other


def minimum_integer_form(c: Sequence, rhs) -> tuple[tuple[int, ...], int]:
    """Scale ``<c, x> >= rhs`` to coprime integers.

    Returns ``(t*c, t*rhs)`` for the unique positive rational ``t`` making all
    entries integral with collective gcd 1.
    """
    c = vector(c)
    rhs = as_rational(rhs)
    if rhs <= 0:
        raise ValueError("right-hand side must be positive")
    if any(q < 0 for q in c):
        raise ValueError("coefficients must be nonnegative")
    if not any(c):
        raise ValueError("coefficient vector must not be zero")
    ints = integer_row(list(c) + [rhs])
    return tuple(ints[:-1]), ints[-1]

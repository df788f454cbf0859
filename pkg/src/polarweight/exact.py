"""Exact integer/rational arithmetic and small dense linear algebra.

Integers are plain Python ints and rationals are :class:`fractions.Fraction`
(always reduced, positive denominator).  Matrices are sequences of rows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

IntMatrix = Sequence[Sequence[int]]


class DimensionError(ValueError):
    pass


class NoUniqueSolution(ArithmeticError):
    """Raised by :func:`solve_linear` when the matrix is singular."""


@dataclass(frozen=True)
class GaussianRational:
    """Exact complex number ``re + im*i`` with rational parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            return cls(Fraction(x.real), Fraction(x.imag))
        return cls(Fraction(x))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __add__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussianRational.coerce(other))

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __mul__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}i)"


def _check_rect(A: IntMatrix) -> tuple[int, int]:
    rows = len(A)
    cols = len(A[0]) if rows else 0
    if any(len(r) != cols for r in A):
        raise DimensionError("ragged matrix")
    return rows, cols


def det(A: IntMatrix) -> int:
    """Determinant by fraction-free (Bareiss) elimination.

    Every intermediate quotient is exact, so the computation never leaves
    the integers.
    """
    n, cols = _check_rect(A)
    if n != cols:
        raise DimensionError(f"det of non-square {n}x{cols} matrix")
    if n == 0:
        return 1
    M = [list(map(int, row)) for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = M[k][k]
        for i in range(k + 1, n):
            mik = M[i][k]
            row_i, row_k = M[i], M[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - mik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * M[n - 1][n - 1]


def rank(A: IntMatrix) -> int:
    """Exact rank over the rationals (fraction-free elimination)."""
    rows, cols = _check_rect(A)
    M = [list(map(int, row)) for row in A]
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        p = M[r][c]
        for i in range(r + 1, rows):
            if M[i][c]:
                m = M[i][c]
                M[i] = [p * x - m * y for x, y in zip(M[i], M[r])]
        r += 1
        if r == rows:
            break
    return r


def _rref(rows: list[list[Fraction]]) -> list[int]:
    """In-place reduced row echelon form; returns pivot columns."""
    pivots: list[int] = []
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv if x else x for x in rows[r]]
        # exponent rows are sparse: only touch the pivot row's support
        support = [j for j, y in enumerate(rows[r]) if y]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                m = rows[i][c]
                row = rows[i]
                for j in support:
                    row[j] = row[j] - m * rows[r][j]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def solve_linear(A: IntMatrix, b: Sequence) -> tuple[Fraction, ...]:
    """Unique exact solution of ``A x = b`` for square ``A``."""
    n, cols = _check_rect(A)
    if n != cols:
        raise DimensionError(f"solve_linear needs a square matrix, got {n}x{cols}")
    if len(b) != n:
        raise DimensionError("right-hand side length mismatch")
    aug = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(A, b)]
    pivots = _rref(aug)
    if len(pivots) < n or pivots[-1] == n:
        raise NoUniqueSolution("matrix is singular")
    return tuple(aug[i][n] for i in range(n))


@dataclass(frozen=True)
class AffineSolution:
    """Solution set of an affine system ``A x = b``.

    When ``consistent`` the set is ``particular + span(nullspace)``;
    otherwise both are empty.
    """

    consistent: bool
    particular: tuple[Fraction, ...] | None
    nullspace: tuple[tuple[Fraction, ...], ...]

    @property
    def unique(self) -> bool:
        return self.consistent and not self.nullspace


def solve_affine_system(rows: IntMatrix, rhs: Sequence | None = None) -> AffineSolution:
    """Solve a possibly over- or under-determined system exactly.

    ``rhs`` defaults to all ones, the normalized weight equations.
    """
    nrows, ncols = _check_rect(rows)
    if nrows == 0:
        raise DimensionError("empty system")
    if rhs is None:
        rhs = [1] * nrows
    if len(rhs) != nrows:
        raise DimensionError("right-hand side length mismatch")
    aug = [[Fraction(x) for x in row] + [Fraction(c)] for row, c in zip(rows, rhs)]
    pivots = _rref(aug)
    if pivots and pivots[-1] == ncols:
        return AffineSolution(False, None, ())
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = aug[i][ncols]
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -aug[i][fc]
        basis.append(tuple(v))
    return AffineSolution(True, tuple(x), tuple(basis))


def gcd_many(xs: Sequence[int]) -> int:
    if len(xs) == 0:
        raise ValueError("gcd of empty list")
    return math.gcd(*map(int, xs))


def lcm_many(xs: Sequence[int]) -> int:
    if len(xs) == 0:
        raise ValueError("lcm of empty list")
    if any(int(x) == 0 for x in xs):
        raise ValueError("lcm of zero")
    return math.lcm(*(abs(int(x)) for x in xs))


def matmul(A: IntMatrix, B: IntMatrix) -> list[list]:
    _, k = _check_rect(A)
    k2, m = _check_rect(B)
    if k != k2:
        raise DimensionError("inner dimensions differ")
    return [[sum(A[i][t] * B[t][j] for t in range(k)) for j in range(m)]
            for i in range(len(A))]


def inverse(A: IntMatrix) -> list[list[Fraction]]:
    """Exact inverse of a square integer (or rational) matrix."""
    n, cols = _check_rect(A)
    if n != cols:
        raise DimensionError("inverse of non-square matrix")
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(A)]
    pivots = _rref(aug)
    if pivots != list(range(n)):
        raise NoUniqueSolution("matrix is singular")
    return [row[n:] for row in aug]

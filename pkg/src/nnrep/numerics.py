"""Exact rational scalars, matrices and the linear algebra the constructions need.

Scalars are :class:`fractions.Fraction` (always in lowest terms with a
positive denominator).  Matrices are immutable row-major tuples of them.
Nothing in this module rounds.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch, RankDeficient, Singular

Rational = Fraction

_RATIONAL_RE = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` with an optional sign; no whitespace, no decimals."""
    if not isinstance(text, str):
        raise ValueError(f"expected a string rational, got {text!r}")
    match = _RATIONAL_RE.match(text)
    if match is None:
        raise ValueError(f"malformed rational {text!r}")
    num = int(match.group(1))
    den = int(match.group(2)) if match.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _bits_for(v: int) -> int:
    # smallest r >= 0 with v <= 2**r
    return (v - 1).bit_length() if v > 1 else 0


def resolution_scalar(q) -> int:
    """Bits needed for ``a/b``: ceil(max(log2|a+1|, log2|b+1|)), by integer arithmetic."""
    q = Fraction(q)
    return max(_bits_for(abs(q.numerator + 1)), _bits_for(abs(q.denominator + 1)))


class RationalMatrix:
    """Immutable dense matrix of Fractions."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, entries: Iterable[Iterable], cols: int | None = None):
        data = tuple(tuple(Fraction(x) for x in row) for row in entries)
        if data:
            width = len(data[0])
            if any(len(row) != width for row in data):
                raise DimensionMismatch("ragged matrix rows")
        else:
            width = cols or 0
        if cols is not None and data and width != cols:
            raise DimensionMismatch(f"expected {cols} columns, got {width}")
        self.rows = len(data)
        self.cols = width
        self._data = data

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    def __getitem__(self, idx):
        if isinstance(idx, tuple):
            i, j = idx
            return self._data[i][j]
        return self._data[idx]

    def __iter__(self):
        return iter(self._data)

    def __len__(self):
        return self.rows

    def __eq__(self, other):
        if isinstance(other, RationalMatrix):
            return self.cols == other.cols and self._data == other._data
        return NotImplemented

    def __hash__(self):
        return hash((self.cols, self._data))

    def __repr__(self):
        body = ", ".join("[" + ", ".join(format_rational(x) for x in row) + "]" for row in self._data)
        return f"RationalMatrix([{body}])"

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def tolist(self) -> list[list[Fraction]]:
        return [list(row) for row in self._data]

    def entries(self) -> list[Fraction]:
        """Row-major flat list."""
        return [x for row in self._data for x in row]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self._data)

    @property
    def T(self) -> "RationalMatrix":
        return RationalMatrix([self.column(j) for j in range(self.cols)], cols=self.rows)

    def __matmul__(self, other):
        if isinstance(other, RationalMatrix):
            if self.cols != other.rows:
                raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
            cols = [other.column(j) for j in range(other.cols)]
            return RationalMatrix(
                [[dot(row, col) for col in cols] for row in self._data], cols=other.cols
            )
        vec = tuple(other)
        if len(vec) != self.cols:
            raise DimensionMismatch(f"cannot multiply {self.shape} by vector of length {len(vec)}")
        return tuple(dot(row, vec) for row in self._data)

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        return RationalMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)], cols=self.cols
        )

    def scale(self, k) -> "RationalMatrix":
        k = Fraction(k)
        return RationalMatrix([[k * x for x in row] for row in self._data], cols=self.cols)


def dot(u: Sequence, v: Sequence) -> Fraction:
    if len(u) != len(v):
        raise DimensionMismatch(f"length {len(u)} vs {len(v)}")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def resolution_matrix(A) -> int:
    """Largest entry resolution; 0 for an empty matrix."""
    return max((resolution_scalar(x) for row in A for x in row), default=0)


def _as_square(A) -> list[list[Fraction]]:
    rows = [[Fraction(x) for x in row] for row in A]
    if any(len(row) != len(rows) for row in rows):
        raise DimensionMismatch("matrix is not square")
    return rows


def det(A) -> Fraction:
    """Exact determinant by Gaussian elimination (first nonzero pivot)."""
    a = _as_square(A)
    n = len(a)
    result = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            result = -result
        p = a[col][col]
        result *= p
        for r in range(col + 1, n):
            f = a[r][col] / p
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return result


def solve_linear(A, b: Sequence) -> tuple[Fraction, ...]:
    """Solve ``A x = b`` exactly for square nonsingular ``A``."""
    a = _as_square(A)
    n = len(a)
    if len(b) != n:
        raise DimensionMismatch(f"right-hand side has length {len(b)}, expected {n}")
    aug = [row + [Fraction(v)] for row, v in zip(a, b)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise Singular("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(row[n] for row in aug)


def inverse(A) -> RationalMatrix:
    a = _as_square(A)
    n = len(a)
    cols = [solve_linear(a, [1 if i == j else 0 for i in range(n)]) for j in range(n)]
    return RationalMatrix(cols, cols=n).T if n else RationalMatrix([], cols=0)


def mp_inverse(W) -> RationalMatrix:
    """Moore-Penrose inverse of a full-row-rank matrix, ``W^T (W W^T)^-1``."""
    W = W if isinstance(W, RationalMatrix) else RationalMatrix(W)
    if W.rows > W.cols:
        raise RankDeficient(f"{W.rows}x{W.cols} matrix cannot have full row rank")
    gram = W @ W.T
    if det(gram) == 0:
        raise RankDeficient("W W^T is singular")
    return W.T @ inverse(gram)

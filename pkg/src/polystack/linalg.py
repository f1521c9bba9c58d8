"""Exact rational linear algebra.

Scalars are :class:`fractions.Fraction`, points are tuples of fractions.
Elimination is done fraction-free (Bareiss) on integer rows; rational
input rows are cleared of denominators first.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

Vector = tuple  # tuple[Fraction, ...]


class NoUniqueSolution(ArithmeticError):
    """The linear system is singular (parallel or degenerate hyperplanes)."""


class Side(enum.Enum):
    BEYOND = -1
    ON = 0
    BENEATH = 1


def scalar(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass ints, strings or Fractions")
    return Fraction(x)


def vector(coords: Iterable) -> Vector:
    return tuple(scalar(c) for c in coords)


def dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def sub(a: Sequence, b: Sequence) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def add(a: Sequence, b: Sequence) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def scale(c, a: Sequence) -> Vector:
    return tuple(c * x for x in a)


def _integer_row(row: Sequence) -> list[int]:
    """Scale a rational row by the lcm of its denominators."""
    den = reduce(lcm, (Fraction(x).denominator for x in row), 1)
    return [int(Fraction(x) * den) for x in row]


def _primitive(row: Sequence[int]) -> tuple[int, ...]:
    g = reduce(gcd, row, 0)
    if g == 0:
        return tuple(row)
    return tuple(x // g for x in row)


def _bareiss_echelon(rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Fraction-free forward elimination.

    Returns the echelon rows (only the nonzero ones) and the list of pivot
    columns. Any nonzero entry is an admissible pivot in exact arithmetic.
    """
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    prev = 1
    for c in range(ncols):
        if r == len(m):
            break
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        for i in range(r + 1, len(m)):
            mic = m[i][c]
            row_i = m[i]
            row_r = m[r]
            for j in range(c, ncols):
                row_i[j] = (piv * row_i[j] - mic * row_r[j]) // prev
        prev = piv
        pivots.append(c)
        r += 1
    return m[:r], pivots


def integer_determinant(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix by fraction-free elimination."""
    n = len(rows)
    if n == 2:
        (a, b), (c, d) = rows
        return a * d - b * c
    if n == 3:
        (a, b, c), (d, e, f), (g, h, i) = rows
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    m = [list(r) for r in rows]
    sign, prev = 1, 1
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            m[c], m[p] = m[p], m[c]
            sign = -sign
        piv = m[c][c]
        for i in range(c + 1, n):
            mic = m[i][c]
            for j in range(c + 1, n):
                m[i][j] = (piv * m[i][j] - mic * m[c][j]) // prev
        prev = piv
    return sign * m[n - 1][n - 1] if n else 1


def cofactor_normal(rows: Sequence[Sequence[int]], d: int) -> list[int]:
    """Integer vector orthogonal to d-1 integer rows in R^d; zero iff the rows are dependent."""
    return [(-1) ** j * integer_determinant([list(r[:j]) + list(r[j + 1:]) for r in rows])
            for j in range(d)]


def scaled_to_integers(points: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    """The points times the lcm of all denominators (a positive scaling)."""
    den = reduce(lcm, (c.denominator for p in points for c in p), 1)
    return [[c.numerator * (den // c.denominator) for c in p] for p in points]


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    _, pivots = _bareiss_echelon([_integer_row(r) for r in rows])
    return len(pivots)


def affine_rank(points: Sequence[Sequence]) -> int:
    """Dimension of the affine hull of ``points``."""
    if not points:
        raise ValueError("affine_rank of an empty point set")
    base = points[0]
    return rank([sub(p, base) for p in points[1:]])


def barycenter(points: Sequence[Sequence]) -> Vector:
    if not points:
        raise ValueError("barycenter of an empty point set")
    n = len(points)
    return tuple(sum(c) / n for c in zip(*(vector(p) for p in points)))


def kernel_vector(rows: Sequence[Sequence], ncols: int) -> tuple[int, ...]:
    """A primitive integer vector spanning the kernel of ``rows``.

    The kernel must be exactly one-dimensional.
    """
    ech, pivots = _bareiss_echelon([_integer_row(r) for r in rows]) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    if len(free) != 1:
        raise NoUniqueSolution(f"kernel has dimension {len(free)}, expected 1")
    x: list[Fraction] = [Fraction(0)] * ncols
    x[free[0]] = Fraction(1)
    for row, pc in reversed(list(zip(ech, pivots))):
        s = sum(row[j] * x[j] for j in range(pc + 1, ncols))
        x[pc] = Fraction(-s) / row[pc]
    return _primitive(_integer_row(x))


@dataclass(frozen=True)
class Hyperplane:
    """Oriented hyperplane ``{x : <normal, x> = offset}``.

    The polytope side is ``<normal, x> >= offset``. Normals are stored as
    primitive integer vectors (scaled by a positive factor only, so the
    orientation survives normalization); two oriented hyperplanes are equal
    iff their fields are equal.
    """

    normal: tuple
    offset: Fraction

    @classmethod
    def make(cls, normal: Sequence, offset) -> "Hyperplane":
        row = _integer_row(list(normal) + [offset])
        if all(x == 0 for x in row[:-1]):
            raise ValueError("hyperplane normal must be nonzero")
        g = reduce(gcd, row[:-1], 0)
        return cls(tuple(x // g for x in row[:-1]), Fraction(row[-1], g))

    @property
    def dim(self) -> int:
        return len(self.normal)

    def value(self, x: Sequence) -> Fraction:
        return dot(self.normal, x) - self.offset

    def side(self, x: Sequence) -> Side:
        v = self.value(x)
        if v > 0:
            return Side.BENEATH
        if v < 0:
            return Side.BEYOND
        return Side.ON

    def flipped(self) -> "Hyperplane":
        return Hyperplane(tuple(-c for c in self.normal), -self.offset)


def classify_point(h: Hyperplane, x: Sequence) -> Side:
    if len(x) != h.dim:
        raise ValueError(f"dimension mismatch: point has {len(x)} coordinates, hyperplane {h.dim}")
    return h.side(x)


def solve_square(hyperplanes: Sequence[Hyperplane]) -> Vector:
    """The unique common point of ``d`` hyperplanes in dimension ``d``."""
    if not hyperplanes:
        raise ValueError("need at least one hyperplane")
    d = hyperplanes[0].dim
    if len(hyperplanes) != d or any(h.dim != d for h in hyperplanes):
        raise ValueError(f"solve_square needs exactly {d} hyperplanes of dimension {d}")
    rows = [_integer_row(list(h.normal) + [h.offset]) for h in hyperplanes]
    ech, pivots = _bareiss_echelon(rows)
    if pivots[:d] != list(range(d)) or len(pivots) < d:
        raise NoUniqueSolution("hyperplane normals are linearly dependent")
    x: list[Fraction] = [Fraction(0)] * d
    for i in reversed(range(d)):
        row = ech[i]
        s = sum(row[j] * x[j] for j in range(i + 1, d))
        x[i] = Fraction(row[d] - s) / row[i]
    return tuple(x)


def hyperplane_through(points: Sequence[Sequence], beneath: Sequence) -> Hyperplane:
    """Hyperplane through ``points`` (affine rank d-1), oriented so that
    ``beneath`` lies strictly on its positive side."""
    d = len(beneath)
    base = points[0]
    normal = kernel_vector([sub(p, base) for p in points[1:]], d)
    h = Hyperplane.make(normal, dot(normal, base))
    s = h.side(beneath)
    if s is Side.ON:
        raise ValueError("reference point lies on the hyperplane")
    return h if s is Side.BENEATH else h.flipped()

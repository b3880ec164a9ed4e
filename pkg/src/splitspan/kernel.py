"""Exact rational linear algebra.

Everything here works on ``fractions.Fraction`` (or plain ``int``) entries.
Matrices are sequences of rows; vectors are tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Vector = tuple[Fraction, ...]
Matrix = Sequence[Sequence[Fraction]]


def frac(x) -> Fraction:
    """Parse an int, Fraction or ``"p/q"`` string into a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass a string 'p/q' or an int")
    return Fraction(x)


def fmt(x: Fraction) -> str:
    """Serialize a rational as ``"p/q"`` (or ``"p"`` when q = 1)."""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def vec(xs: Iterable) -> Vector:
    return tuple(frac(x) for x in xs)


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def sub(u: Sequence, v: Sequence) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def add(u: Sequence, v: Sequence) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def scale(c, u: Sequence) -> Vector:
    return tuple(c * a for a in u)


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b) if a and b else max(a, b)


def integer_row(row: Sequence[Fraction]) -> list[int]:
    """Clear denominators of a rational row (positive multiple, not reduced)."""
    m = 1
    for x in row:
        m = lcm(m, Fraction(x).denominator)
    return [int(Fraction(x) * m) for x in row]


def primitive(row: Sequence) -> tuple[int, ...]:
    """Smallest positive multiple of ``row`` with coprime integer entries."""
    ints = integer_row(row)
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def _bareiss(rows: list[list[int]]) -> tuple[int, int]:
    """In-place fraction-free elimination. Returns (rank, signed det factor)."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    prev = 1
    r = 0
    sign = 1
    for c in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
            sign = -sign
        p = rows[r][c]
        for i in range(r + 1, m):
            a = rows[i][c]
            ri = rows[i]
            rr = rows[r]
            for j in range(c, n):
                ri[j] = (p * ri[j] - a * rr[j]) // prev
        prev = p
        r += 1
    return r, sign * (prev if r == m == n else 0)


def rank(m: Matrix) -> int:
    """Exact rank via Bareiss elimination on an integer-scaled copy."""
    rows = [integer_row(r) for r in m if len(r)]
    if not rows:
        return 0
    return _bareiss(rows)[0]


def det(m: Matrix) -> Fraction:
    n = len(m)
    if n == 0:
        return Fraction(1)
    scales = Fraction(1)
    rows = []
    for r in m:
        den = 1
        for x in r:
            den = lcm(den, Fraction(x).denominator)
        scales *= den
        rows.append([int(Fraction(x) * den) for x in r])
    _, d = _bareiss(rows)
    return Fraction(d) / scales


def rref(m: Matrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns the nonzero rows and pivot columns."""
    rows = [[Fraction(x) for x in r] for r in m]
    if not rows:
        return [], []
    n = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        if p != 1:
            rows[r] = [x / p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def kernel_basis(m: Matrix, cols: int | None = None) -> list[Vector]:
    """Canonical basis of {x : m x = 0} read off the RREF.

    ``cols`` is needed only when ``m`` has no rows.
    """
    if cols is None:
        cols = len(m[0])
    if not m:
        return [tuple(Fraction(int(i == j)) for j in range(cols)) for i in range(cols)]
    R, pivots = rref(m)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for row, p in zip(R, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def transpose(m: Matrix) -> list[list[Fraction]]:
    return [list(c) for c in zip(*m)]


def solve(m: Matrix, b: Sequence) -> Vector | None:
    """One solution of m x = b (free variables set to 0), or None."""
    cols = len(m[0])
    aug = [list(r) + [frac(bi)] for r, bi in zip(m, b)]
    R, pivots = rref(aug)
    if cols in pivots:
        return None
    x = [Fraction(0)] * cols
    for row, p in zip(R, pivots):
        x[p] = row[cols]
    return tuple(x)


def matvec(m: Matrix, v: Sequence) -> Vector:
    return tuple(dot(r, v) for r in m)


@dataclass(frozen=True)
class AffineSubspace:
    basepoint: Vector
    direction_basis: tuple[Vector, ...]

    @property
    def dim(self) -> int:
        return len(self.direction_basis)

    def contains(self, p: Sequence) -> bool:
        d = sub(p, self.basepoint)
        return rank(list(self.direction_basis) + [d]) == self.dim

    def normals(self) -> list[Vector]:
        """Basis of the orthogonal complement of the direction space."""
        n = len(self.basepoint)
        if not self.direction_basis:
            return kernel_basis([], cols=n)
        return kernel_basis(self.direction_basis)


def affine_hull(points: Sequence[Sequence]) -> AffineSubspace:
    if not points:
        raise ValueError("affine hull of an empty set")
    base = vec(points[0])
    diffs = [sub(vec(p), base) for p in points[1:]]
    R, _ = rref(diffs) if diffs else ([], [])
    return AffineSubspace(base, tuple(tuple(r) for r in R))


def affine_rank(points: Sequence[Sequence]) -> int:
    """Dimension of the affine hull (-1 for the empty set)."""
    if not points:
        return -1
    base = points[0]
    return rank([sub(p, base) for p in points[1:]]) if len(points) > 1 else 0

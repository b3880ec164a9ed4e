"""Exact two-phase simplex over the rationals (Bland's rule).

The public entry points take constraints in the form used throughout the
package: ``(a, b)`` pairs meaning ``a.x >= b`` (weak), ``a.x > b`` (strict),
or ``a.x == b`` (equations). All variables are free.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .kernel import Vector, dot

Constraint = tuple[Sequence, object]

_ZERO = Fraction(0)


class _Tableau:
    """Dense tableau for: maximize c.y, A y = b, y >= 0, with b >= 0."""

    def __init__(self, A: list[list[Fraction]], b: list[Fraction]):
        self.m = len(A)
        self.n = len(A[0]) if A else 0
        self.A = A
        self.b = b
        self.basis: list[int] = [-1] * self.m

    def pivot(self, r: int, c: int) -> None:
        A, b = self.A, self.b
        p = A[r][c]
        row = A[r]
        if p != 1:
            inv = 1 / p
            A[r] = row = [x * inv for x in row]
            b[r] *= inv
        br = b[r]
        nz = [j for j, x in enumerate(row) if x != 0]
        for i in range(self.m):
            if i == r:
                continue
            f = A[i][c]
            if f == 0:
                continue
            Ai = A[i]
            for j in nz:
                Ai[j] -= f * row[j]
            b[i] -= f * br
        self.basis[r] = c

    def optimize(self, c: list[Fraction], allowed: int) -> str:
        """Maximize c.y over columns < ``allowed``. Returns 'optimal'/'unbounded'."""
        while True:
            # reduced costs
            cb = [c[j] for j in self.basis]
            enter = None
            for j in range(allowed):
                if j in self._basic:
                    continue
                rc = c[j] - sum((cb[i] * self.A[i][j] for i in range(self.m) if cb[i] != 0 and self.A[i][j] != 0), _ZERO)
                if rc > 0:
                    enter = j
                    break
            if enter is None:
                return "optimal"
            best = None
            for i in range(self.m):
                a = self.A[i][enter]
                if a > 0:
                    ratio = self.b[i] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return "unbounded"
            r = best[1]
            self._basic.discard(self.basis[r])
            self.pivot(r, enter)
            self._basic.add(enter)


def _solve_standard(A, b, c, n_struct):
    """maximize c.y s.t. A y = b, y >= 0 (rows of A are copied).

    Returns (status, y) with status in {'optimal', 'unbounded', 'infeasible'}.
    """
    m = len(A)
    rows = []
    rhs = []
    for row, bi in zip(A, b):
        row = [Fraction(x) for x in row]
        bi = Fraction(bi)
        if bi < 0:
            row = [-x for x in row]
            bi = -bi
        rows.append(row)
        rhs.append(bi)
    n = n_struct
    # artificials
    for i in range(m):
        rows[i].extend(Fraction(int(i == k)) for k in range(m))
    T = _Tableau(rows, rhs)
    T.basis = [n + i for i in range(m)]
    T._basic = set(T.basis)
    phase1 = [_ZERO] * n + [Fraction(-1)] * m
    T.optimize(phase1, n + m)
    if sum(T.b[i] for i in range(m) if T.basis[i] >= n) != 0:
        return "infeasible", None
    # drive artificials out of the basis where possible
    for i in range(m):
        if T.basis[i] >= n:
            j = next((j for j in range(n) if T.A[i][j] != 0 and j not in T._basic), None)
            if j is not None:
                T._basic.discard(T.basis[i])
                T.pivot(i, j)
                T._basic.add(j)
    cfull = [Fraction(x) for x in c] + [_ZERO] * m
    # artificial columns are excluded from entering
    status = T.optimize(cfull, n)
    y = [_ZERO] * n
    for i, j in enumerate(T.basis):
        if j < n:
            y[j] = T.b[i]
    return status, y


def linprog(
    objective: Sequence,
    weak: Sequence[Constraint] = (),
    eqs: Sequence[Constraint] = (),
    nvars: int | None = None,
) -> tuple[str, Vector | None, Fraction | None]:
    """Maximize ``objective.x`` over free ``x`` subject to weak/eq constraints.

    Returns ``(status, x, value)``; status is 'optimal', 'unbounded' or
    'infeasible'.
    """
    if nvars is None:
        nvars = len(objective)
    # x = xp - xm; one surplus per weak row
    nw = len(weak)
    ncols = 2 * nvars + nw
    A, b = [], []
    for k, (a, bb) in enumerate(weak):
        row = [Fraction(x) for x in a] + [-Fraction(x) for x in a] + [_ZERO] * nw
        row[2 * nvars + k] = Fraction(-1)
        A.append(row)
        b.append(Fraction(bb))
    for a, bb in eqs:
        A.append([Fraction(x) for x in a] + [-Fraction(x) for x in a] + [_ZERO] * nw)
        b.append(Fraction(bb))
    c = [Fraction(x) for x in objective] + [-Fraction(x) for x in objective] + [_ZERO] * nw
    if not A:
        if any(Fraction(x) != 0 for x in objective):
            return "unbounded", None, None
        return "optimal", tuple([_ZERO] * nvars), _ZERO
    status, y = _solve_standard(A, b, c, ncols)
    if status != "optimal":
        return status, None, None
    x = tuple(y[i] - y[nvars + i] for i in range(nvars))
    return status, x, dot(objective, x)


def check_point(x: Sequence, strict=(), weak=(), eqs=()) -> bool:
    """Exact verification of a candidate witness."""
    return (
        all(dot(a, x) > Fraction(b) for a, b in strict)
        and all(dot(a, x) >= Fraction(b) for a, b in weak)
        and all(dot(a, x) == Fraction(b) for a, b in eqs)
    )


def strict_lp_feasible(
    strict: Sequence[Constraint] = (),
    weak: Sequence[Constraint] = (),
    eqs: Sequence[Constraint] = (),
    nvars: int | None = None,
) -> Vector | None:
    """Exact point satisfying strict, weak and equality constraints, or None.

    Solves ``max t`` subject to ``a.x >= b + t`` on the strict rows,
    ``t <= 1``; the system is feasible iff the optimum is positive.
    """
    allc = list(strict) + list(weak) + list(eqs)
    if nvars is None:
        if not allc:
            raise ValueError("nvars required for an empty system")
        nvars = len(allc[0][0])
    if not strict:
        status, x, _ = linprog([0] * nvars, weak, eqs, nvars)
        return x if status == "optimal" else None
    w2 = [(tuple(a) + (-1,), b) for a, b in strict]
    w2 += [(tuple(a) + (0,), b) for a, b in weak]
    w2.append(((0,) * nvars + (-1,), -1))
    e2 = [(tuple(a) + (0,), b) for a, b in eqs]
    obj = (0,) * nvars + (1,)
    status, x, val = linprog(obj, w2, e2, nvars + 1)
    if status != "optimal" or val <= 0:
        return None
    pt = x[:nvars]
    assert check_point(pt, strict, weak, eqs)
    return pt


def in_convex_hull(p: Sequence, points: Sequence[Sequence]) -> bool:
    """Exact membership test p in conv(points)."""
    if not points:
        return False
    n = len(points)
    d = len(p)
    weak = [(tuple(int(i == j) for j in range(n)), 0) for i in range(n)]
    eqs = [(tuple(pt[k] for pt in points), p[k]) for k in range(d)]
    eqs.append(((1,) * n, 1))
    status, _, _ = linprog([0] * n, weak, eqs, n)
    return status == "optimal"

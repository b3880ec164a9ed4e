"""Hypersimplices Δ(k,n): splits, tripartition 3-splits, counts, matroid checks.

Vertices are k-subsets of range(n) (0-based); the point configuration drops
the last coordinate so that it is full-dimensional in R^(n-1).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import comb
from typing import Iterable

from .config import PointConfiguration, Subdivision


class HypersimplexError(ValueError):
    pass


@dataclass(frozen=True)
class Hypersimplex:
    k: int
    n: int

    def __post_init__(self):
        if not 1 <= self.k <= self.n - 1:
            raise HypersimplexError(f"need 1 <= k <= n-1, got k={self.k}, n={self.n}")

    @cached_property
    def vertex_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(c) for c in itertools.combinations(range(self.n), self.k))

    @cached_property
    def vertex_index(self) -> dict[frozenset[int], int]:
        return {s: i for i, s in enumerate(self.vertex_sets)}

    def vector(self, s: Iterable[int]) -> tuple[int, ...]:
        s = set(s)
        return tuple(int(i in s) for i in range(self.n))

    @cached_property
    def config(self) -> PointConfiguration:
        sep = "," if self.n > 9 else ""
        pts = tuple(tuple(Fraction(x) for x in self.vector(s)[:-1]) for s in self.vertex_sets)
        labels = tuple(sep.join(str(i + 1) for i in sorted(s)) for s in self.vertex_sets)
        return PointConfiguration(pts, labels)

    def cell(self, family: Iterable[frozenset[int]]) -> frozenset[int]:
        return frozenset(self.vertex_index[frozenset(s)] for s in family)

    def family(self, cell: Iterable[int]) -> frozenset[frozenset[int]]:
        return frozenset(self.vertex_sets[i] for i in cell)


def hypersimplex_config(k: int, n: int) -> PointConfiguration:
    return Hypersimplex(k, n).config


# ---------------------------------------------------------------- 2-splits


@dataclass(frozen=True)
class ABSplit:
    """The split cut by sum_{i in B} x_i = mu."""

    A: frozenset[int]
    B: frozenset[int]
    mu: int

    def key(self, k: int) -> frozenset:
        return frozenset({(self.B, self.mu), (self.A, k - self.mu)})

    def cells(self, hs: Hypersimplex) -> Subdivision:
        plus = [s for s in hs.vertex_sets if len(s & self.B) >= self.mu]
        minus = [s for s in hs.vertex_sets if len(s & self.B) <= self.mu]
        return Subdivision.of([hs.cell(plus), hs.cell(minus)])

    def to_json(self) -> dict:
        return {"A": sorted(i + 1 for i in self.A), "B": sorted(i + 1 for i in self.B), "mu": self.mu}


def hypersimplex_two_splits(k: int, n: int) -> list[ABSplit]:
    Hypersimplex(k, n)
    seen = set()
    out = []
    for mu in range(1, k):
        for size in range(k - mu + 1, n - mu):
            for A in itertools.combinations(range(n), size):
                A = frozenset(A)
                s = ABSplit(A, frozenset(range(n)) - A, mu)
                if s.key(k) not in seen:
                    seen.add(s.key(k))
                    out.append(s)
    return out


# ---------------------------------------------------------------- 3-splits


@dataclass(frozen=True)
class TripartitionSplit:
    parts: tuple[frozenset[int], frozenset[int], frozenset[int]]
    mus: tuple[int, int, int]
    orientation: int = 1

    def validate(self, k: int, n: int) -> None:
        A1, A2, A3 = self.parts
        if A1 | A2 | A3 != frozenset(range(n)) or len(A1) + len(A2) + len(A3) != n:
            raise HypersimplexError("parts do not partition [n]")
        if sum(self.mus) != k:
            raise HypersimplexError("mu values must sum to k")
        if not all(1 <= m <= len(a) - 1 for m, a in zip(self.mus, self.parts)):
            raise HypersimplexError("need 1 <= mu_j <= |A_j| - 1")
        if self.orientation not in (1, 2):
            raise HypersimplexError("orientation is 1 or 2")

    def to_json(self) -> dict:
        return {
            "parts": [sorted(i + 1 for i in a) for a in self.parts],
            "mu": list(self.mus),
            "orientation": self.orientation,
        }


def three_split_families(t: TripartitionSplit, k: int, n: int) -> list[list[frozenset[int]]]:
    """Vertex families of the three cells.

    Cell j (cyclically) keeps the k-sets S with |S ∩ A_{j+2}| <= mu_{j+2} and
    |S ∩ A_{j+1}| >= mu_{j+1}; orientation 2 reverses both inequalities.
    """
    t.validate(k, n)
    hs = Hypersimplex(k, n)
    A, mu = t.parts, t.mus
    out = []
    for j in range(3):
        lo, hi = (j + 2) % 3, (j + 1) % 3
        if t.orientation == 1:
            fam = [s for s in hs.vertex_sets if len(s & A[lo]) <= mu[lo] and len(s & A[hi]) >= mu[hi]]
        else:
            fam = [s for s in hs.vertex_sets if len(s & A[lo]) >= mu[lo] and len(s & A[hi]) <= mu[hi]]
        out.append(fam)
    return out


def three_split_cells(t: TripartitionSplit, k: int, n: int) -> Subdivision:
    hs = Hypersimplex(k, n)
    return Subdivision.of(hs.cell(f) for f in three_split_families(t, k, n))


def three_split_core(t: TripartitionSplit, k: int, n: int) -> frozenset[int]:
    hs = Hypersimplex(k, n)
    return hs.cell(s for s in hs.vertex_sets if all(len(s & a) == m for a, m in zip(t.parts, t.mus)))


def _unordered_tripartitions(n: int) -> Iterable[tuple[frozenset[int], frozenset[int], frozenset[int]]]:
    """Each unordered partition of range(n) into three nonempty parts, once."""
    for labels in itertools.product(range(3), repeat=n):
        parts = [frozenset(i for i in range(n) if labels[i] == j) for j in range(3)]
        if any(not p for p in parts):
            continue
        # canonical labeling: part 0 holds 0, part 1 holds the smallest element outside part 0
        if labels[0] != 0:
            continue
        rest = [i for i in range(n) if labels[i] != 0]
        if labels[rest[0]] != 1:
            continue
        yield tuple(parts)


def mu_assignments(sizes: tuple[int, ...], k: int) -> list[tuple[int, int, int]]:
    """All (mu1, mu2, mu3) with sum k and 1 <= mu_j <= sizes_j - 1."""
    return [
        m
        for m in itertools.product(*(range(1, s) for s in sizes))
        if sum(m) == k
    ]


def tripartition_splits(k: int, n: int) -> list[TripartitionSplit]:
    Hypersimplex(k, n)
    out = []
    for parts in _unordered_tripartitions(n):
        for mus in mu_assignments(tuple(len(p) for p in parts), k):
            for o in (1, 2):
                out.append(TripartitionSplit(parts, mus, o))
    return out


def mu_count(alpha: int, beta: int, k: int, n: int) -> int:
    """The closed-form sum for the number of mu choices, term by term as printed.

    The terms can be negative when the range of mu_2 is empty; see
    ``mu_count_clamped`` for the actual number of choices.
    """
    gamma = n - alpha - beta
    return sum(
        min(beta - 1, k - i - 1) - max(0, k - i - gamma) for i in range(1, min(alpha - 1, k - 2) + 1)
    )


def mu_count_clamped(alpha: int, beta: int, k: int, n: int) -> int:
    """Same sum with each term clamped at zero (empty ranges contribute nothing)."""
    gamma = n - alpha - beta
    return sum(
        max(0, min(beta - 1, k - i - 1) - max(0, k - i - gamma)) for i in range(1, min(alpha - 1, k - 2) + 1)
    )


def mu_count_k4(alpha: int, beta: int, n: int) -> int:
    """Shortcut for k = 4: three minus the number of parts of size two."""
    return 3 - sum(1 for j in (alpha, beta, n - alpha - beta) if j == 2)


def count_three_splits(k: int, n: int) -> int:
    total = 0
    for alpha in range(2, n - 3):
        for beta in range(2, n - alpha - 1):
            total += mu_count_clamped(alpha, beta, k, n) * comb(n, alpha) * comb(n - alpha, beta)
    if total % 3:
        raise AssertionError("count formula produced a non-integer")
    return total // 3


def count_three_splits_printed(k: int, n: int) -> Fraction:
    """The count with the unclamped sum, for comparison."""
    total = 0
    for alpha in range(2, n - 3):
        for beta in range(2, n - alpha - 1):
            total += mu_count(alpha, beta, k, n) * comb(n, alpha) * comb(n - alpha, beta)
    return Fraction(total, 3)


# ---------------------------------------------------------------- matroids


def is_matroid_family(family: Iterable[Iterable[int]]) -> bool:
    """Basis exchange: for B1, B2 and i in B1-B2 some j in B2-B1 gives a basis."""
    fam = {frozenset(b) for b in family}
    if not fam:
        return False
    if len({len(b) for b in fam}) != 1:
        return False
    for b1 in fam:
        for b2 in fam:
            for i in b1 - b2:
                base = b1 - {i}
                if not any(base | {j} in fam for j in b2 - b1):
                    return False
    return True


def edge_criterion(family: Iterable[Iterable[int]], n: int) -> bool:
    """Every edge of the 0/1 polytope of the family is parallel to some e_i - e_j."""
    from .polyhedron import VPolyhedron, polytope_edges

    fam = sorted({frozenset(b) for b in family}, key=sorted)
    vecs = [tuple(Fraction(int(i in b)) for i in range(n)) for b in fam]
    if len(vecs) == 1:
        return True
    for i, j in polytope_edges(VPolyhedron(tuple(vecs), (), n)):
        diff = [a - b for a, b in zip(vecs[i], vecs[j])]
        if sorted(diff) != [-1] + [0] * (n - 2) + [1]:
            return False
    return True


def is_matroid_subdivision(hs: Hypersimplex, S: Subdivision) -> bool:
    return all(is_matroid_family(hs.family(c)) for c in S.cells)


def bases_by_intersection_bounds(n: int, k: int, parts: Iterable[tuple[Iterable[int], int]]) -> frozenset[frozenset[int]]:
    """k-subsets B of range(n) with |B ∩ A_j| <= mu_j for every (A_j, mu_j).

    The sets A_j must form a laminar family (any two are disjoint or nested).
    """
    parts = [(frozenset(a), m) for a, m in parts]
    for (a, _), (b, _) in itertools.combinations(parts, 2):
        if a & b and not (a <= b or b <= a):
            raise HypersimplexError("bound sets must be pairwise disjoint or nested")
    return frozenset(
        frozenset(s)
        for s in itertools.combinations(range(n), k)
        if all(len(set(s) & a) <= m for a, m in parts)
    )


def cell_bounds(t: TripartitionSplit, j: int, n: int) -> list[tuple[frozenset[int], int]]:
    """Upper bounds describing cell j of a 3-split (a lower bound on A becomes an upper bound on its complement)."""
    A, mu = t.parts, t.mus
    k = sum(mu)
    full = frozenset(range(n))
    lo, hi = (j + 2) % 3, (j + 1) % 3
    if t.orientation == 1:
        return [(A[lo], mu[lo]), (full - A[hi], k - mu[hi])]
    return [(A[hi], mu[hi]), (full - A[lo], k - mu[lo])]


def three_split_ksplit(t: TripartitionSplit, k: int, n: int):
    """The 3-split as a KSplit record, with the core face read off symbolically.

    No coarseness check is run; use ``detect_k_split`` for a certified record.
    """
    from .kernel import affine_hull
    from .ksplit import KSplit

    A = hypersimplex_config(k, n)
    core = three_split_core(t, k, n)
    return KSplit(three_split_cells(t, k, n), 3, core, affine_hull(A.subset(core)))

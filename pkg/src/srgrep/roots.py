"""Norm-2 vectors of integral lattices and their ADE classification.

Lattices are given by a positive definite rational Gram matrix in some basis.
Enumeration is Fincke-Pohst style but with exact rational bounds: the Gram
matrix is written as ``sum_i d_i (x_i + sum_{j>i} m_ij x_j)**2`` and each
coordinate range is cut out with integer square roots, then every candidate
is re-checked exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from math import ceil, floor, isqrt

from .errors import InputError, SrgError
from .exactlin import RatMatrix, psd_rank, rank


class NotPositiveDefinite(InputError):
    pass


class UnrecognizedComponent(SrgError):
    pass


class RankUnsupported(InputError):
    pass


@dataclass(frozen=True)
class LatticeGram:
    rank: int
    gram: RatMatrix

    @classmethod
    def of(cls, rows) -> "LatticeGram":
        g = rows if isinstance(rows, RatMatrix) else RatMatrix(rows)
        return cls(g.n, g)

    def inner(self, x, y) -> Fraction:
        return sum(
            (self.gram.rows[i][j] * x[i] * y[j] for i in range(self.rank) for j in range(self.rank)),
            Fraction(0),
        )


@dataclass(frozen=True)
class RootSet:
    roots: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.roots)


@dataclass(frozen=True)
class RootComponent:
    type: str
    rank: int
    root_count: int

    def __str__(self) -> str:
        return f"{self.type}{self.rank}"


@dataclass(frozen=True)
class RootClassification:
    components: tuple[RootComponent, ...]

    @property
    def total_roots(self) -> int:
        return sum(c.root_count for c in self.components)

    def as_tuples(self) -> list[tuple[str, int, int]]:
        return [(c.type, c.rank, c.root_count) for c in self.components]


def ade_root_count(kind: str, n: int) -> int:
    if kind == "A" and n >= 1:
        return n * (n + 1)
    if kind == "D" and n >= 4:
        return 2 * n * (n - 1)
    if kind == "E" and n in (6, 7, 8):
        return {6: 72, 7: 126, 8: 240}[n]
    raise InputError(f"no simply-laced system {kind}{n}")


def ade_types(max_rank: int) -> list[tuple[str, int]]:
    out = [("A", n) for n in range(1, max_rank + 1)]
    out += [("D", n) for n in range(4, max_rank + 1)]
    out += [("E", n) for n in (6, 7, 8) if n <= max_rank]
    return out


def _ldl(g: RatMatrix) -> tuple[list[Fraction], list[list[Fraction]]]:
    """Return ``d`` and upper-unit ``m`` with ``x.G.x = sum d_i (x_i + sum_j m_ij x_j)^2``."""
    n = g.n
    a = g.to_lists()
    d: list[Fraction] = []
    m = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        p = a[i][i]
        if p <= 0:
            raise NotPositiveDefinite(f"pivot {i} is {p}")
        d.append(p)
        for j in range(i + 1, n):
            m[i][j] = a[i][j] / p
        for r in range(i + 1, n):
            f = a[r][i] / p
            for c in range(i + 1, n):
                a[r][c] -= f * a[i][c]
    return d, m


def _int_range(center: Fraction, radius_sq: Fraction) -> range:
    """Integers ``x`` with ``(x - center)**2 <= radius_sq``."""
    if radius_sq < 0:
        return range(0)
    rad = isqrt(radius_sq.numerator * radius_sq.denominator) // radius_sq.denominator
    lo = floor(center) - rad - 1
    hi = ceil(center) + rad + 1
    lo = next((x for x in range(lo, hi + 1) if (x - center) ** 2 <= radius_sq), hi + 1)
    hi = next((x for x in range(hi, lo - 1, -1) if (x - center) ** 2 <= radius_sq), lo - 1)
    return range(lo, hi + 1)


def short_vectors(lat: LatticeGram, target_norm=2) -> RootSet:
    """All integer coordinate vectors ``x`` with ``x.G.x == target_norm``, sorted."""
    target = Fraction(target_norm)
    if target <= 0:
        raise InputError("target norm must be positive")
    ok, rk = psd_rank(lat.gram)
    if not ok or rk != lat.rank:
        raise NotPositiveDefinite("lattice Gram matrix is not positive definite")
    d, m = _ldl(lat.gram)
    n = lat.rank
    x = [0] * n
    found: list[tuple[int, ...]] = []

    def descend(i: int, remaining: Fraction) -> None:
        center = -sum((m[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        for xi in _int_range(center, remaining / d[i]):
            x[i] = xi
            rest = remaining - d[i] * (xi - center) ** 2
            if i == 0:
                if rest == 0:
                    found.append(tuple(x))
            else:
                descend(i - 1, rest)
        x[i] = 0

    descend(n - 1, target)
    return RootSet(tuple(sorted(found)))


def classify(rs: RootSet, lat: LatticeGram) -> RootClassification:
    """Split a complete norm-2 root set into irreducible ADE components."""
    roots = list(rs.roots)
    gx = [lat.gram.matvec(r) for r in roots]
    n = len(roots)
    parent = list(range(n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(n):
        for j in range(i + 1, n):
            ip = sum((a * b for a, b in zip(gx[i], roots[j])), Fraction(0))
            if ip != 0:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)

    comps = []
    for idx in groups.values():
        rk = rank(RatMatrix([roots[i] for i in idx]))
        count = len(idx)
        match = [(t, r) for t, r in ade_types(8) if r == rk and ade_root_count(t, r) == count]
        if not match:
            raise UnrecognizedComponent(f"component of rank {rk} with {count} roots")
        comps.append(RootComponent(match[0][0], rk, count))
    comps.sort(key=lambda c: ("ADE".index(c.type), c.rank))
    return RootClassification(tuple(comps))


def max_roots(rank_: int) -> int:
    """Largest root count of a simply-laced system of total rank at most ``rank_``."""
    if not 1 <= rank_ <= 4:
        raise RankUnsupported("certified only for ranks 1..4")
    return _best_sum(rank_)[0]


def _best_sum(rank_: int) -> tuple[int, tuple[tuple[str, int], ...]]:
    types = ade_types(rank_)
    best: tuple[int, tuple] = (0, ())
    for parts in range(1, rank_ + 1):
        for combo in combinations_with_replacement(types, parts):
            if sum(r for _, r in combo) <= rank_:
                total = sum(ade_root_count(t, r) for t, r in combo)
                if total > best[0]:
                    best = (total, combo)
    return best


def cartan_gram(kind: str, n: int) -> RatMatrix:
    """Gram matrix of the simple roots (the Cartan matrix, simply-laced case)."""
    edges: list[tuple[int, int]]
    if kind == "A":
        edges = [(i, i + 1) for i in range(n - 1)]
    elif kind == "D" and n >= 4:
        edges = [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    elif kind == "E" and n in (6, 7, 8):
        # chain 0..n-2 with the extra node attached to node 2
        edges = [(i, i + 1) for i in range(n - 2)] + [(2, n - 1)]
    else:
        raise InputError(f"no simply-laced system {kind}{n}")
    rows = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in edges:
        rows[i][j] = rows[j][i] = -1
    return RatMatrix(rows)

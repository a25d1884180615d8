"""Dense linear algebra over the rationals.

Everything here is exact: entries are :class:`fractions.Fraction` and no
routine ever touches a float.  Matrices are small (at most a few dozen rows),
so plain Python lists are used throughout.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .errors import InputError, SrgError

Rat = Fraction


class NotSymmetric(InputError):
    pass


class InconsistentSystem(SrgError):
    """The right-hand side is not in the column space of the Gram matrix."""


def _rat(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class RatMatrix:
    """Rectangular matrix of exact rationals (usually square and symmetric)."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable]):
        self.rows = [[_rat(x) for x in row] for row in rows]
        if self.rows:
            width = len(self.rows[0])
            if any(len(r) != width for r in self.rows):
                raise InputError("ragged matrix")

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, n: int, m: int | None = None) -> "RatMatrix":
        return cls([[0] * (n if m is None else m) for _ in range(n)])

    @classmethod
    def diag(cls, values: Sequence) -> "RatMatrix":
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        if isinstance(other, RatMatrix):
            return self.rows == other.rows
        return NotImplemented

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows)
        return f"RatMatrix([{body}])"

    def copy(self) -> "RatMatrix":
        return RatMatrix(self.rows)

    def transpose(self) -> "RatMatrix":
        return RatMatrix(zip(*self.rows)) if self.rows else RatMatrix([])

    def is_symmetric(self) -> bool:
        n, m = self.shape
        return n == m and all(
            self.rows[i][j] == self.rows[j][i] for i in range(n) for j in range(i)
        )

    def matvec(self, x: Sequence) -> list[Fraction]:
        return [sum((a * _rat(b) for a, b in zip(row, x)), Fraction(0)) for row in self.rows]

    def quadratic_form(self, x: Sequence) -> Fraction:
        return sum((_rat(a) * b for a, b in zip(x, self.matvec(x))), Fraction(0))

    def submatrix(self, idx: Sequence[int]) -> "RatMatrix":
        return RatMatrix([[self.rows[i][j] for j in idx] for i in idx])

    def to_lists(self) -> list[list[Fraction]]:
        return [list(r) for r in self.rows]


def gram_path(r: int) -> RatMatrix:
    """Tridiagonal ``r x r`` matrix with 2 on the diagonal and -1 beside it."""
    if r < 1:
        raise InputError("r must be >= 1")
    return RatMatrix(
        [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(r)] for i in range(r)]
    )


def gram_cycle(t: int) -> RatMatrix:
    """Circulant Gram matrix of the orthogonalized vectors on a ``t``-cycle."""
    if t < 3:
        raise InputError("cycle length must be >= 3")
    return circulant_cycle(t, 2, -1, 0)


def circulant_cycle(t: int, same, adjacent, other) -> RatMatrix:
    """Circulant matrix taking three values: diagonal, cycle-neighbor, rest."""

    def entry(i: int, j: int):
        if i == j:
            return same
        d = (i - j) % t
        return adjacent if d in (1, t - 1) else other

    return RatMatrix([[entry(i, j) for j in range(t)] for i in range(t)])


def _integer_rows(m: RatMatrix) -> tuple[list[list[int]], int]:
    """Scale each row to integers; return rows and the product of scales."""
    rows, scale = [], 1
    for row in m.rows:
        d = lcm(*(x.denominator for x in row)) if row else 1
        rows.append([int(x * d) for x in row])
        scale *= d
    return rows, scale


def det(m: RatMatrix) -> Fraction:
    """Determinant by Bareiss fraction-free elimination on an integer image."""
    n, k = m.shape
    if n != k:
        raise InputError("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    a, scale = _integer_rows(m)
    sign, prev = 1, 1
    for c in range(n - 1):
        if a[c][c] == 0:
            for r in range(c + 1, n):
                if a[r][c] != 0:
                    a[c], a[r] = a[r], a[c]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        p = a[c][c]
        for i in range(c + 1, n):
            ai = a[i]
            aic = ai[c]
            for j in range(c + 1, n):
                # exact: Bareiss guarantees divisibility
                ai[j] = (p * ai[j] - aic * a[c][j]) // prev
            ai[c] = 0
        prev = p
    return Fraction(sign * a[n - 1][n - 1], scale)


def det_naive(m: RatMatrix) -> Fraction:
    """Determinant by ordinary rational Gaussian elimination."""
    n, k = m.shape
    if n != k:
        raise InputError("determinant of a non-square matrix")
    a = m.to_lists()
    result = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            result = -result
        result *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return result


def rank(m: RatMatrix) -> int:
    """Exact rank via elimination with full pivoting."""
    a = m.to_lists()
    nrows, ncols = m.shape
    rk = 0
    active_rows = list(range(nrows))
    active_cols = list(range(ncols))
    while active_rows and active_cols:
        pivot = next(
            ((i, j) for i in active_rows for j in active_cols if a[i][j] != 0), None
        )
        if pivot is None:
            break
        pi, pj = pivot
        rk += 1
        active_rows.remove(pi)
        active_cols.remove(pj)
        prow = a[pi]
        for i in active_rows:
            f = a[i][pj] / prow[pj]
            if f:
                row = a[i]
                for j in active_cols:
                    row[j] -= f * prow[j]
                row[pj] = Fraction(0)
    return rk


def rank_naive(m: RatMatrix) -> int:
    """Rank by row reduction with partial (column-order) pivoting."""
    a = m.to_lists()
    nrows, ncols = m.shape
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, nrows):
            f = a[i][c] / a[r][c]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
    return r


def psd_rank(m: RatMatrix) -> tuple[bool, int]:
    """Decide positive semidefiniteness exactly and return ``(is_psd, rank)``.

    Symmetric elimination: every pivot must be nonnegative, and a zero pivot
    requires its whole remaining row to vanish.  For a PSD matrix the rank is
    the number of positive pivots; otherwise the ordinary rank is reported.
    """
    if not m.is_symmetric():
        raise NotSymmetric("psd_rank needs a symmetric matrix")
    a = m.to_lists()
    n = m.n
    positive = 0
    for i in range(n):
        p = a[i][i]
        if p < 0:
            return False, rank(m)
        if p == 0:
            if any(a[i][j] != 0 for j in range(i + 1, n)):
                return False, rank(m)
            continue
        positive += 1
        row = a[i]
        for j in range(i + 1, n):
            f = a[j][i] / p
            if f:
                rj = a[j]
                for l in range(i + 1, n):
                    rj[l] -= f * row[l]
    return True, positive


def solve_consistent(gram: RatMatrix, b: Sequence) -> list[Fraction]:
    """One exact solution of ``gram @ x = b`` (free variables set to zero).

    Raises :class:`InconsistentSystem` when no solution exists.
    """
    n, ncols = gram.shape
    if len(b) != n:
        raise InputError("right-hand side has the wrong length")
    aug = [row + [_rat(bi)] for row, bi in zip(gram.to_lists(), b)]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, n) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(n):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == n:
            break
    for i in range(r, n):
        if aug[i][ncols] != 0:
            raise InconsistentSystem(
                f"right-hand side leaves residual {aug[i][ncols]} after elimination"
            )
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = aug[i][ncols]
    return x


def projection_sq_norm(gram: RatMatrix, b: Sequence) -> Fraction:
    """Squared length of the projection of a target onto ``span{g_i}``.

    ``gram`` is the Gram matrix of the generators ``g_i`` and ``b[i]`` is the
    inner product of the target with ``g_i``.  For any solution ``x`` of
    ``gram @ x = b`` the projection is ``sum x_i g_i`` and its squared length
    is ``b . x``, independent of the solution chosen.
    """
    x = solve_consistent(gram, b)
    return sum((_rat(bi) * xi for bi, xi in zip(b, x)), Fraction(0))

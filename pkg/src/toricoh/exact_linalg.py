"""Exact integer and rational linear algebra.

Smith normal form with unimodular transforms, integer kernel bases, ranks
over Q and over prime fields, and exhaustive minor statistics.  Everything
runs on Python ints; no floating point enters anywhere in this package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

__all__ = [
    "IntMatrix",
    "SnfResult",
    "MinorStats",
    "smith_normal_form",
    "kernel_basis",
    "rank_over_field",
    "minor_stats",
    "det",
    "solve",
    "is_prime",
]


def _check_int(e):
    if isinstance(e, bool) or not isinstance(e, int):
        raise TypeError("matrix entries must be Python ints, got %r" % (e,))
    return e


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix; entries stored row-major as nested tuples."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows:
            raise ValueError("row count mismatch")
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("ragged row")
            for e in row:
                _check_int(e)

    @staticmethod
    def from_rows(rows, cols=None):
        rows = tuple(tuple(_check_int(e) for e in r) for r in rows)
        if cols is None:
            if not rows:
                raise ValueError("cols required for an empty matrix")
            cols = len(rows[0])
        return IntMatrix(len(rows), cols, rows)

    @staticmethod
    def identity(n):
        return IntMatrix(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    def row(self, i):
        return self.entries[i]

    def column(self, j):
        return tuple(r[j] for r in self.entries)

    def transpose(self):
        return IntMatrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.entries else ())

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        bt = list(zip(*other.entries)) if other.entries else [()] * other.cols
        ent = tuple(
            tuple(sum(a * b for a, b in zip(r, c)) for c in bt) for r in self.entries
        )
        if self.rows == 0:
            ent = ()
        return IntMatrix(self.rows, other.cols, ent)

    def mul_vec(self, v):
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self.entries)

    def to_lists(self):
        return [list(r) for r in self.entries]


@dataclass(frozen=True)
class SnfResult:
    """U * A * V = S with U, V unimodular and S diagonal, d_1 | d_2 | ..."""

    U: IntMatrix
    S: IntMatrix
    V: IntMatrix

    def invariant_factors(self):
        k = min(self.S.rows, self.S.cols)
        return tuple(self.S.entries[i][i] for i in range(k) if self.S.entries[i][i] != 0)


@dataclass(frozen=True)
class MinorStats:
    """max_abs[j-1] is the largest |j x j minor|; min_nonzero_top the least
    nonzero |d x d minor| (>= 1 for an integer matrix of rank d)."""

    max_abs: tuple
    min_nonzero_top: int


def _min_abs_pivot(A, t, m, n):
    best = None
    for i in range(t, m):
        Ai = A[i]
        for j in range(t, n):
            v = Ai[j]
            if v:
                a = -v if v < 0 else v
                if best is None or a < best[0]:
                    best = (a, i, j)
    return None if best is None else (best[1], best[2])


def smith_normal_form(a: IntMatrix) -> SnfResult:
    """Deterministic Smith normal form.

    Pivoting always selects the entry of minimal absolute value (lowest
    row/column index on ties), which controls coefficient growth and makes
    the output reproducible.
    """
    m, n = a.rows, a.cols
    A = [list(r) for r in a.entries]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, k):
        A[i], A[k] = A[k], A[i]
        U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for r in A:
            r[j], r[k] = r[k], r[j]
        for r in V:
            r[j], r[k] = r[k], r[j]

    def negate_row(i):
        A[i] = [-x for x in A[i]]
        U[i] = [-x for x in U[i]]

    def row_sub(i, k, q):
        # A[i] -= q * A[k]
        Ak, Ai = A[k], A[i]
        A[i] = [x - q * y for x, y in zip(Ai, Ak)]
        Uk, Ui = U[k], U[i]
        U[i] = [x - q * y for x, y in zip(Ui, Uk)]

    def col_sub(j, k, q):
        # col j -= q * col k
        for r in A:
            r[j] -= q * r[k]
        for r in V:
            r[j] -= q * r[k]

    t = 0
    limit = min(m, n)
    while t < limit:
        piv = _min_abs_pivot(A, t, m, n)
        if piv is None:
            break
        i, j = piv
        if i != t:
            swap_rows(i, t)
        if j != t:
            swap_cols(j, t)
        if A[t][t] < 0:
            negate_row(t)
        while True:
            # clear the pivot column
            for i in range(t + 1, m):
                while A[i][t]:
                    q = A[i][t] // A[t][t]
                    if q:
                        row_sub(i, t, q)
                    if A[i][t]:
                        swap_rows(i, t)
                        if A[t][t] < 0:
                            negate_row(t)
            # clear the pivot row
            for j in range(t + 1, n):
                while A[t][j]:
                    q = A[t][j] // A[t][t]
                    if q:
                        col_sub(j, t, q)
                    if A[t][j]:
                        swap_cols(j, t)
                        if A[t][t] < 0:
                            negate_row(t)
            if all(A[i][t] == 0 for i in range(t + 1, m)) and all(
                A[t][j] == 0 for j in range(t + 1, n)
            ):
                break
        # pivot must divide every remaining entry for the divisibility chain
        d = A[t][t]
        offender = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if A[i][j] % d:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            row_sub(t, offender, -1)  # A[t] += A[offender]
            continue
        t += 1

    Um = IntMatrix.from_rows(U, cols=m) if m else IntMatrix(0, 0, ())
    Vm = IntMatrix.from_rows(V, cols=n) if n else IntMatrix(0, 0, ())
    Sm = IntMatrix.from_rows(A, cols=n) if m else IntMatrix(0, n, ())
    if __debug__:
        assert Um.mul(a).mul(Vm).entries == Sm.entries, "SNF reconstruction failed"
    return SnfResult(Um, Sm, Vm)


def kernel_basis(a: IntMatrix):
    """Basis of the right integer kernel {x : A x = 0}, as a list of tuples.

    The kernel of an integer map is saturated, so this basis always spans a
    saturated sublattice.
    """
    res = smith_normal_form(a)
    rank = len(res.invariant_factors())
    return [res.V.column(j) for j in range(rank, a.cols)]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def _rank_rational(rows):
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        cand = [i for i in range(rank, len(rows)) if rows[i][col]]
        if not cand:
            continue
        best = min(cand, key=lambda i: (abs(rows[i][col]), i))
        rows[rank], rows[best] = rows[best], rows[rank]
        prow = rows[rank]
        piv = prow[col]
        for i in range(rank + 1, len(rows)):
            v = rows[i][col]
            if v:
                g = math.gcd(piv, v)
                pf, vf = piv // g, v // g
                ri = rows[i]
                new = [pf * x - vf * y for x, y in zip(ri, prow)]
                gg = 0
                for x in new:
                    gg = math.gcd(gg, x)
                    if gg == 1:
                        break
                if gg > 1:
                    new = [x // gg for x in new]
                rows[i] = new
        rank += 1
        if rank == len(rows):
            break
    return rank


def _rank_mod_p(rows, p):
    rows = [r for r in rows if any(e % p for e in r)]
    if not rows:
        return 0
    if p < 2 ** 31:
        M = np.array(rows, dtype=np.int64) % p
        nrows, ncols = M.shape
        r = 0
        for col in range(ncols):
            nz = np.nonzero(M[r:, col])[0]
            if nz.size == 0:
                continue
            i = r + int(nz[0])
            if i != r:
                M[[r, i]] = M[[i, r]]
            inv = pow(int(M[r, col]), -1, p)
            M[r] = (M[r] * inv) % p
            below = M[r + 1:, col]
            mask = below != 0
            if mask.any():
                M[r + 1:][mask] = (M[r + 1:][mask] - np.outer(below[mask], M[r])) % p
            r += 1
            if r == nrows:
                break
        return r
    # large prime fallback, plain integer arithmetic
    rows = [[e % p for e in r] for r in rows]
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        piv_i = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv_i is None:
            continue
        rows[rank], rows[piv_i] = rows[piv_i], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [(x * inv) % p for x in rows[rank]]
        prow = rows[rank]
        for i in range(rank + 1, len(rows)):
            v = rows[i][col]
            if v:
                rows[i] = [(x - v * y) % p for x, y in zip(rows[i], prow)]
        rank += 1
        if rank == len(rows):
            break
    return rank


def rank_over_field(a: IntMatrix, char: int) -> int:
    """Rank of the matrix over Q (char 0) or over F_char (char prime)."""
    if char == 0:
        return _rank_rational(a.entries)
    if not is_prime(char):
        raise ValueError("characteristic must be zero or a prime, got %r" % (char,))
    return _rank_mod_p([list(r) for r in a.entries], char)


def det(a: IntMatrix) -> int:
    """Exact determinant (fraction-free Bareiss elimination)."""
    if a.rows != a.cols:
        raise ValueError("determinant of a non-square matrix")
    n = a.rows
    if n == 0:
        return 1
    M = [list(r) for r in a.entries]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def minor_stats(a: IntMatrix, d: int) -> MinorStats:
    """Exhaustive minor magnitudes of an integer matrix of rank exactly d.

    Enumeration is deliberately brute force; inputs here are desk scale
    (a dozen rows, half a dozen columns).
    """
    if d < 1:
        raise ValueError("d must be positive")
    if rank_over_field(a, 0) != d:
        raise ValueError("matrix rank is not %d" % d)
    max_abs = []
    min_top = None
    for j in range(1, d + 1):
        best = 0
        for rsel in combinations(range(a.rows), j):
            for csel in combinations(range(a.cols), j):
                sub = IntMatrix.from_rows(
                    [[a.entries[i][c] for c in csel] for i in rsel], cols=j
                )
                v = abs(det(sub))
                if v > best:
                    best = v
                if j == d and v and (min_top is None or v < min_top):
                    min_top = v
        max_abs.append(best)
    assert min_top is not None and min_top >= 1
    return MinorStats(tuple(max_abs), min_top)


def solve(a: IntMatrix, b):
    """One integer solution x of A x = b, or None when none exists."""
    if len(b) != a.rows:
        raise ValueError("rhs length mismatch")
    res = smith_normal_form(a)
    y = res.U.mul_vec(b)
    k = min(a.rows, a.cols)
    x_prime = [0] * a.cols
    for i in range(a.rows):
        di = res.S.entries[i][i] if i < k else 0
        if di:
            if y[i] % di:
                return None
            x_prime[i] = y[i] // di
        elif y[i]:
            return None
    return res.V.mul_vec(tuple(x_prime))

"""Coarse gradings of a polynomial ring.

A grading is a surjection phi from Z^n onto D = Z^r (+) Z/t_1 (+) ... with
the fiber lattice M = ker(phi).  When built from an integer matrix rho of
rank d (rows are ray-like vectors, columns span M), D is the cokernel of
rho computed through the Smith normal form, torsion included; then
M = ker(phi) equals the column span of rho exactly, and it is saturated
precisely when D is torsion-free.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exact_linalg import IntMatrix, kernel_basis, rank_over_field, smith_normal_form, solve

__all__ = [
    "CoarseDegree",
    "Grading",
    "build_grading",
    "grading_from_phi",
    "coarse_degree",
    "fiber_representative",
]


@dataclass(frozen=True)
class CoarseDegree:
    """Element of Z^r (+) Z/t_1 (+) ...; residues are kept reduced."""

    free: tuple
    residues: tuple
    torsion: tuple

    def __post_init__(self):
        if len(self.residues) != len(self.torsion):
            raise ValueError("residue/torsion length mismatch")
        object.__setattr__(self, "free", tuple(int(x) for x in self.free))
        object.__setattr__(
            self, "residues", tuple(int(x) % t for x, t in zip(self.residues, self.torsion))
        )
        object.__setattr__(self, "torsion", tuple(int(t) for t in self.torsion))

    def _check(self, other):
        if self.torsion != other.torsion or len(self.free) != len(other.free):
            raise ValueError("degrees from different gradings")

    def __add__(self, other):
        self._check(other)
        return CoarseDegree(
            tuple(a + b for a, b in zip(self.free, other.free)),
            tuple(a + b for a, b in zip(self.residues, other.residues)),
            self.torsion,
        )

    def __sub__(self, other):
        self._check(other)
        return CoarseDegree(
            tuple(a - b for a, b in zip(self.free, other.free)),
            tuple(a - b for a, b in zip(self.residues, other.residues)),
            self.torsion,
        )

    def __neg__(self):
        return CoarseDegree(
            tuple(-a for a in self.free), tuple(-a for a in self.residues), self.torsion
        )

    def is_zero(self):
        return not any(self.free) and not any(self.residues)


@dataclass(frozen=True)
class Grading:
    n: int
    free_rank: int
    torsion: tuple
    phi_free: IntMatrix  # free_rank x n
    phi_tors: IntMatrix  # len(torsion) x n
    m_basis: IntMatrix  # n x d, columns form a basis of ker(phi)
    rho: IntMatrix | None

    @property
    def d(self):
        return self.m_basis.cols

    def zero_degree(self) -> CoarseDegree:
        return CoarseDegree((0,) * self.free_rank, (0,) * len(self.torsion), self.torsion)

    def degree(self, free=(), residues=None) -> CoarseDegree:
        if residues is None:
            residues = (0,) * len(self.torsion)
        return CoarseDegree(tuple(free), tuple(residues), self.torsion)


def _empty_matrix(rows, cols):
    return IntMatrix(rows, cols, tuple(tuple(0 for _ in range(cols)) for _ in range(rows)))


def build_grading(rho: IntMatrix) -> Grading:
    """Grading with D = coker(rho), for rho of full column rank.

    The coordinates of D are the ones the Smith normal form produces, so
    they are deterministic for a fixed rho; reports echo the matrix rows so
    callers can translate to their preferred basis.
    """
    n, d = rho.rows, rho.cols
    if d == 0:
        return Grading(n, n, (), IntMatrix.identity(n), IntMatrix(0, n, ()), IntMatrix(n, 0, tuple(() for _ in range(n))), rho)
    if rank_over_field(rho, 0) != d:
        raise ValueError("grading matrix is rank-deficient")
    res = smith_normal_form(rho)
    diag = [res.S.entries[i][i] for i in range(d)]
    free_rows = [res.U.entries[i] for i in range(d, n)]
    tors_rows = []
    torsion = []
    for i in range(d):
        if diag[i] > 1:
            tors_rows.append(res.U.entries[i])
            torsion.append(diag[i])
    phi_free = IntMatrix.from_rows(free_rows, cols=n) if free_rows else IntMatrix(0, n, ())
    phi_tors = IntMatrix.from_rows(tors_rows, cols=n) if tors_rows else IntMatrix(0, n, ())
    g = Grading(n, n - d, tuple(torsion), phi_free, phi_tors, rho, rho)
    if __debug__:
        for col in range(d):
            c = rho.column(col)
            assert not any(phi_free.mul_vec(c)), "phi . rho != 0"
            assert all(v % t == 0 for v, t in zip(phi_tors.mul_vec(c), torsion))
    return g


def _congruence_matrix(g: Grading) -> IntMatrix:
    """Matrix of (phi_free; phi_tors | diag(torsion)) acting on (p, u)."""
    r, s, n = g.free_rank, len(g.torsion), g.n
    rows = []
    for i in range(r):
        rows.append(tuple(g.phi_free.entries[i]) + (0,) * s)
    for i in range(s):
        slack = tuple(g.torsion[i] if j == i else 0 for j in range(s))
        rows.append(tuple(g.phi_tors.entries[i]) + slack)
    return IntMatrix.from_rows(rows, cols=n + s) if rows else IntMatrix(0, n + s, ())


def grading_from_phi(n, phi_rows, torsion=()) -> Grading:
    """Grading given directly by the matrix of phi.

    The last len(torsion) rows are torsion coordinates with the given
    moduli (each >= 2); the rest are free coordinates.  The map must be
    surjective onto Z^r (+) Z/t_i, and M is taken to be its full kernel.
    """
    torsion = tuple(int(t) for t in torsion)
    if any(t < 2 for t in torsion):
        raise ValueError("torsion orders must be >= 2")
    rows = [tuple(int(e) for e in r) for r in phi_rows]
    if any(len(r) != n for r in rows):
        raise ValueError("phi rows must have length n")
    s = len(torsion)
    if s > len(rows):
        raise ValueError("more torsion orders than rows")
    free_rows = rows[: len(rows) - s]
    tors_rows = rows[len(rows) - s:]
    phi_free = IntMatrix.from_rows(free_rows, cols=n) if free_rows else IntMatrix(0, n, ())
    phi_tors = IntMatrix.from_rows(tors_rows, cols=n) if tors_rows else IntMatrix(0, n, ())
    g0 = Grading(n, len(free_rows), torsion, phi_free, phi_tors, _empty_matrix(n, 0), None)
    block = _congruence_matrix(g0)
    if block.rows:
        factors = smith_normal_form(block).invariant_factors()
        if len(factors) != block.rows or any(f != 1 for f in factors):
            raise ValueError("phi is not surjective onto the stated group")
        kern = kernel_basis(block)
        cols = [v[:n] for v in kern]
    else:
        cols = [tuple(int(i == j) for i in range(n)) for j in range(n)]
    m_basis = IntMatrix.from_rows(
        [tuple(c[i] for c in cols) for i in range(n)], cols=len(cols)
    ) if cols else IntMatrix(n, 0, tuple(() for _ in range(n)))
    return Grading(n, len(free_rows), torsion, phi_free, phi_tors, m_basis, None)


def coarse_degree(g: Grading, p) -> CoarseDegree:
    """phi(p)."""
    p = tuple(int(x) for x in p)
    if len(p) != g.n:
        raise ValueError("fine degree length mismatch")
    free = g.phi_free.mul_vec(p) if g.free_rank else ()
    tors = g.phi_tors.mul_vec(p) if g.torsion else ()
    return CoarseDegree(free, tors, g.torsion)


def fiber_representative(g: Grading, delta: CoarseDegree):
    """Some p with phi(p) = delta; None only if delta is not in the image,
    which cannot happen for a grading built by this module (phi is checked
    surjective) but is kept for totality."""
    if delta.torsion != g.torsion or len(delta.free) != g.free_rank:
        raise ValueError("degree does not belong to this grading")
    block = _congruence_matrix(g)
    if not block.rows:
        return (0,) * g.n
    target = tuple(delta.free) + tuple(delta.residues)
    sol = solve(block, target)
    if sol is None:
        return None
    return tuple(sol[: g.n])

"""User-facing operations: support tables, exact coarse-degree dimensions,
and truncation bounds for the ring, free modules, and graded modules
described by Betti data.

Truncated Ext dimensions are never computed symbolically: the injectivity
of Ext into local cohomology for bracket powers turns every such dimension
into a count of fiber lattice points above a degree cutoff.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .cech import restricted_cech_dims, sheaf_fine_dims
from .cones import FinitenessError, f_bound, fiber_points, finiteness_check, finiteness_witness
from .grading import CoarseDegree, Grading, coarse_degree
from .monomials import MonomialIdeal, alexander_dual, betti_support
from .tables import BettiTable, SigmaTable, sigma_table
from .toric import ToricData

__all__ = [
    "FreeModule",
    "MonomialQuotient",
    "UserBetti",
    "sigma_dual",
    "sigma_sheaf",
    "hB_dim",
    "sheaf_dim",
    "ext_truncated_dim",
    "bound_S",
    "bound_free",
    "bound_module",
    "module_betti_levels",
]


@dataclass(frozen=True)
class FreeModule:
    """Direct sum of shifted copies of the ring; multiplicities are
    irrelevant for bounds, so shifts are kept as a set."""

    shifts: tuple


@dataclass(frozen=True)
class MonomialQuotient:
    """(S/ideal) shifted by the given coarse degrees (default: no shift).
    Betti degrees are the fine Betti degrees of the quotient pushed through
    the grading."""

    ideal: MonomialIdeal
    shifts: tuple = ()


@dataclass(frozen=True)
class UserBetti:
    """Betti table supplied directly, e.g. from an external resolution."""

    table: BettiTable


@lru_cache(maxsize=None)
def sigma_dual(b: MonomialIdeal, char: int = 0) -> SigmaTable:
    """Support table through Alexander duality: each nonzero Tor of the
    dual quotient in a nonzero square-free degree p contributes the support
    of p at cohomological index |p| - j + 1.

    The head Tor (homological degree 0 in degree 0) reflects the field
    itself, not a cohomology class, and is skipped; row 0 carries the
    documented sections entry instead.  Dimensions are attached from the
    restricted Cech complex, which doubles as a consistency guard between
    the two routes.
    """
    if b.is_zero or b.is_unit:
        raise ValueError("support table requires a nonzero proper ideal")
    if not b.square_free:
        raise ValueError("support table requires a square-free ideal")
    dual = alexander_dual(b)
    mapping = {0: {frozenset(): 1}}
    for (j, p), _tor_dim in betti_support(dual, char).items():
        if not any(p):
            continue
        subset = frozenset(i for i, e in enumerate(p) if e)
        i = len(subset) - j + 1
        dim = restricted_cech_dims(b, subset, char).dim(i)
        if dim < 1:
            raise AssertionError(
                "duality predicted a nonzero group at I=%s, i=%d but the "
                "restricted complex vanishes" % (sorted(subset), i)
            )
        mapping.setdefault(i, {})[subset] = dim
    return sigma_table(b.n, "local", "dual", mapping)


@lru_cache(maxsize=None)
def sigma_sheaf(x: ToricData, char: int = 0) -> SigmaTable:
    """Sheaf support table, by evaluating the fine dimensions at one
    representative degree per negative-support set."""
    n = x.fan.n_rays
    mapping = {}
    for mask in range(1 << n):
        subset = frozenset(i for i in range(n) if mask >> i & 1)
        dims = sheaf_fine_dims(x, subset, char)
        for i, dim in enumerate(dims):
            if dim:
                mapping.setdefault(i, {})[subset] = dim
    return sigma_table(n, "sheaf", "sheaf", mapping)


def _require_finite(g: Grading, table_row):
    for subset in table_row:
        if not finiteness_check(g, subset):
            raise FinitenessError(subset, finiteness_witness(g, subset))


def hB_dim(b: MonomialIdeal, g: Grading, i: int, delta: CoarseDegree, char: int = 0, sigma: SigmaTable | None = None) -> int:
    """Exact dimension of the i-th local cohomology of the ring in coarse
    degree delta: fiber point counts weighted by the fine dimensions.

    Index 0 returns 0 (a nonzero monomial ideal contains nonzerodivisors);
    the sections row of the table never enters local dimensions.
    """
    if i == 0:
        return 0
    if sigma is None:
        sigma = sigma_dual(b, char)
    row = sigma.row(i)
    _require_finite(g, row)
    return sum(len(fiber_points(g, delta, subset)) * dim for subset, dim in row.items())


def sheaf_dim(x: ToricData, i: int, delta: CoarseDegree, char: int = 0, sigma: SigmaTable | None = None) -> int:
    """Exact h^i of the twisted structure sheaf in coarse degree delta; at
    i = 0 this counts the monomials of that degree."""
    if sigma is None:
        sigma = sigma_sheaf(x, char)
    row = sigma.row(i)
    g = x.grading
    _require_finite(g, row)
    return sum(len(fiber_points(g, delta, subset)) * dim for subset, dim in row.items())


def ext_truncated_dim(b: MonomialIdeal, g: Grading, i: int, delta: CoarseDegree, ell: int, char: int = 0, sigma: SigmaTable | None = None) -> int:
    """Dimension in coarse degree delta of Ext^i against the quotient by
    the ell-th bracket power: the part of the local cohomology whose fine
    degrees are >= -ell in every coordinate, counted without computing any
    Ext module."""
    if ell < 0:
        raise ValueError("truncation level must be >= 0")
    if i == 0:
        return 0
    if sigma is None:
        sigma = sigma_dual(b, char)
    row = sigma.row(i)
    _require_finite(g, row)
    total = 0
    for subset, dim in row.items():
        pts = fiber_points(g, delta, subset)
        total += dim * sum(1 for p in pts if min(p) >= -ell)
    return total


def bound_S(g: Grading, sigma: SigmaTable, i: int, delta: CoarseDegree) -> int:
    """Least truncation level at which the Ext of the bracket power fills
    the whole degree-delta cohomology of the ring: the max of the sharp
    per-orthant, per-coordinate bounds over row i of the table."""
    best = 0
    row = sigma.row(i)
    _require_finite(g, row)
    for subset in row:
        for j in subset:
            v = f_bound(g, subset, j, delta)
            if v > best:
                best = v
    return best


def bound_free(g: Grading, sigma: SigmaTable, i: int, delta: CoarseDegree, shifts) -> int:
    """Bound for a free module: max over its shifts of the ring bound at
    the shifted degree (multiplicities cannot matter)."""
    return max((bound_S(g, sigma, i, delta - alpha) for alpha in set(shifts)), default=0)


def module_betti_levels(g: Grading, module, char: int = 0):
    """Map homological level j -> set of coarse Betti degrees of the module."""
    if isinstance(module, FreeModule):
        return {0: set(module.shifts)}
    if isinstance(module, UserBetti):
        return module.table.levels()
    if isinstance(module, MonomialQuotient):
        shifts = set(module.shifts) or {g.zero_degree()}
        levels = {}
        for (j, p), _dim in betti_support(module.ideal, char).items():
            alpha0 = coarse_degree(g, p)
            for base in shifts:
                levels.setdefault(j, set()).add(alpha0 + base)
        return levels
    raise TypeError("unknown module description %r" % (module,))


def bound_module(g: Grading, sigma: SigmaTable, i: int, delta: CoarseDegree, module, char: int = 0) -> int:
    """Truncation level sufficient for an arbitrary graded module presented
    by Betti degrees: level j contributes the ring bounds at indices i+j
    and i+j-1 in the degrees shifted by its Betti degrees."""
    levels = module_betti_levels(g, module, char)
    ell = 0
    for j, alphas in sorted(levels.items()):
        for alpha in alphas:
            shifted = delta - alpha
            if j == 0:
                ell = max(ell, bound_S(g, sigma, i, shifted))
            else:
                ell = max(
                    ell,
                    bound_S(g, sigma, i + j, shifted),
                    bound_S(g, sigma, i + j - 1, shifted),
                )
    return ell

"""Polyhedral layer: signed orthants, finiteness tests, exact lattice point
enumeration in fibers, sharp truncation bounds and the crude determinant
bound.

All feasibility questions are decided by exact integer Fourier-Motzkin
elimination; integer points are collected by a depth-first scan driven by
the elimination tower, so only genuinely feasible boxes are visited.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exact_linalg import IntMatrix, minor_stats
from .grading import CoarseDegree, Grading, coarse_degree, fiber_representative

__all__ = [
    "FinitenessError",
    "UnboundedRegionError",
    "orthant_indicator",
    "finiteness_check",
    "finiteness_witness",
    "enumerate_fiber_orthant",
    "fiber_points",
    "fiber_min_coords",
    "f_bound",
    "crude_bound",
    "separating_hyperplane",
]


class FinitenessError(ValueError):
    """The fiber lattice meets the orthant in a ray; fibers are infinite."""

    def __init__(self, subset, witness=None):
        self.subset = frozenset(subset)
        self.witness = witness
        msg = "finiteness fails for I=%s" % (sorted(i + 1 for i in self.subset),)
        if witness is not None:
            msg += "; certificate %s lies in M and in the orthant" % (list(witness),)
        super().__init__(msg)


class UnboundedRegionError(ValueError):
    pass


def orthant_indicator(n, subset):
    """The vector with -1 on the subset and 0 elsewhere."""
    return tuple(-1 if i in subset else 0 for i in range(n))


# ---------------------------------------------------------------------------
# integer Fourier-Motzkin
#
# A constraint is (coeffs, rhs) meaning coeffs . t <= rhs.  Combinations of
# integer constraints are kept integer by cross-multiplying; dividing a
# constraint by gcd(coeffs, rhs) changes neither its rational nor its
# integer solution set.


def _norm_one(coeffs, rhs):
    g = 0
    for c in coeffs:
        g = math.gcd(g, c)
    g = math.gcd(g, rhs)
    if g > 1:
        coeffs = tuple(c // g for c in coeffs)
        rhs = rhs // g
    return (coeffs, rhs)


def _eliminate_last(cons, v):
    pos, neg, rest = [], [], []
    for coeffs, rhs in cons:
        a = coeffs[v]
        if a > 0:
            pos.append((coeffs, rhs))
        elif a < 0:
            neg.append((coeffs, rhs))
        else:
            rest.append((coeffs[:v], rhs))
    out = {_norm_one(c, r) for c, r in rest}
    for cp, rp in pos:
        a = cp[v]
        for cn, rn in neg:
            b = -cn[v]
            coeffs = tuple(b * cp[i] + a * cn[i] for i in range(v))
            out.add(_norm_one(coeffs, b * rp + a * rn))
    return sorted(out)


def _tower(cons, nvars):
    """systems[k] constrains variables t_0..t_{k-1}; systems[nvars] is the
    input.  systems[0] is a list of (0-tuple, rhs) facts."""
    systems = [None] * (nvars + 1)
    systems[nvars] = sorted({_norm_one(tuple(c), r) for c, r in cons})
    for k in range(nvars, 0, -1):
        systems[k - 1] = _eliminate_last(systems[k], k - 1)
    return systems


def _consistent(facts):
    return all(rhs >= 0 for coeffs, rhs in facts)


def _feasible(cons, nvars) -> bool:
    """Rational feasibility of the system."""
    return _consistent(_tower(cons, nvars)[0])


def _cdiv(q, a):
    return -((-q) // a)


def _interval(system, k, prefix):
    """Integer interval for t_{k-1} given values of t_0..t_{k-2}; None when
    empty, (lo, hi) otherwise with hi possibly None for 'unbounded above'
    and likewise lo."""
    lo, hi = None, None
    for coeffs, rhs in system:
        a = coeffs[k - 1]
        if a == 0:
            continue
        q = rhs - sum(c * t for c, t in zip(coeffs, prefix))
        if a > 0:
            b = q // a
            hi = b if hi is None else min(hi, b)
        else:
            b = _cdiv(q, a)
            lo = b if lo is None else max(lo, b)
    return lo, hi


def _feasible_point(cons, nvars):
    """A rational feasible point as a tuple of Fractions, or None."""
    systems = _tower(cons, nvars)
    if not _consistent(systems[0]):
        return None
    point = []
    for k in range(1, nvars + 1):
        lo, hi = None, None
        for coeffs, rhs in systems[k]:
            a = coeffs[k - 1]
            if a == 0:
                continue
            q = Fraction(rhs - sum(c * t for c, t in zip(coeffs, point)))
            if a > 0:
                b = q / a
                hi = b if hi is None else min(hi, b)
            else:
                b = q / a
                lo = b if lo is None else max(lo, b)
        if lo is None and hi is None:
            point.append(Fraction(0))
        elif lo is None:
            point.append(min(Fraction(0), hi))
        elif hi is None:
            point.append(max(Fraction(0), lo))
        else:
            assert lo <= hi
            point.append(lo if lo > 0 else (hi if hi < 0 else Fraction(0)))
    return tuple(point)


def _integer_points(cons, nvars, base=None, columns=None):
    """All integer solutions; requires the solution set to be bounded.

    With ``base`` and ``columns`` given, returns the affine images
    base + sum t_k columns[k] instead of the raw parameter points; the
    image is accumulated level by level so leaves cost O(len(base)).
    """
    systems = _tower(cons, nvars)
    if not _consistent(systems[0]):
        return []
    if nvars == 0:
        return [tuple(base)] if base is not None else [()]
    out = []
    prefix = [0] * nvars
    images = [None] * (nvars + 1)
    images[0] = tuple(base) if base is not None else None

    def scan(k):
        lo, hi = _interval(systems[k], k, prefix[: k - 1])
        if lo is None or hi is None:
            raise UnboundedRegionError("region unbounded in coordinate %d" % k)
        col = columns[k - 1] if base is not None else None
        prev = images[k - 1]
        for v in range(lo, hi + 1):
            prefix[k - 1] = v
            if base is not None:
                cur = tuple(p + v * c for p, c in zip(prev, col)) if v else prev
            else:
                cur = None
            if k == nvars:
                out.append(cur if base is not None else tuple(prefix))
            else:
                images[k] = cur
                scan(k + 1)

    scan(1)
    return out


# ---------------------------------------------------------------------------
# orthant constraints for x = base + K t


def _region_constraints(g: Grading, subset, base, shift):
    """Constraints on t expressing base + K t in the shifted orthant:
    coordinates in the subset are <= shift_i, the rest are >= shift_i."""
    K = g.m_basis
    cons = []
    for i in range(g.n):
        row = K.entries[i]
        if i in subset:
            cons.append((tuple(row), shift[i] - base[i]))
        else:
            cons.append((tuple(-c for c in row), base[i] - shift[i]))
    return cons


@lru_cache(maxsize=None)
def _orthant_kernel_witness(g: Grading, subset):
    """Nonzero integer t with K t in the closed orthant C_subset, or None.
    Rationality of the cone makes rational and integer solvability agree."""
    n, d = g.n, g.d
    if d == 0:
        return None
    zero = (0,) * n
    sign_cons = _region_constraints(g, subset, zero, zero)
    for m in range(n):
        row = g.m_basis.entries[m]
        if m in subset:
            extra = (tuple(row), -1)  # (K t)_m <= -1
        else:
            extra = (tuple(-c for c in row), -1)  # (K t)_m >= 1
        pt = _feasible_point(sign_cons + [extra], d)
        if pt is not None:
            lcm = 1
            for f in pt:
                lcm = lcm * f.denominator // math.gcd(lcm, f.denominator)
            t = tuple(int(f * lcm) for f in pt)
            gg = 0
            for x in t:
                gg = math.gcd(gg, x)
            if gg > 1:
                t = tuple(x // gg for x in t)
            return t
    return None


def finiteness_witness(g: Grading, subset):
    """A nonzero vector of M inside the closed orthant C_subset, or None."""
    t = _orthant_kernel_witness(g, frozenset(subset))
    if t is None:
        return None
    return g.m_basis.mul_vec(t)


def finiteness_check(g: Grading, subset) -> bool:
    """True when M meets the closed orthant C_subset only in 0, i.e. every
    fiber of the grading meets the orthant in finitely many points."""
    return _orthant_kernel_witness(g, frozenset(subset)) is None


@lru_cache(maxsize=None)
def _fiber_points_cached(g: Grading, delta: CoarseDegree, subset, shift):
    base = fiber_representative(g, delta)
    if base is None:
        raise ValueError("degree not in the image of the grading")
    if not finiteness_check(g, subset):
        raise FinitenessError(subset, finiteness_witness(g, subset))
    cons = _region_constraints(g, subset, base, shift)
    columns = [g.m_basis.column(j) for j in range(g.d)]
    out = _integer_points(cons, g.d, base=base, columns=columns)
    return tuple(sorted(out))


def enumerate_fiber_orthant(g: Grading, delta: CoarseDegree, subset, shift=None):
    """All lattice points of (p + M) n (shift + C_subset) for p representing
    delta.  The default shift is the -1-indicator of the subset, which
    carves out exactly the degrees with negative support equal to subset."""
    subset = frozenset(subset)
    if shift is None:
        shift = orthant_indicator(g.n, subset)
    return list(_fiber_points_cached(g, delta, subset, tuple(int(s) for s in shift)))


def fiber_points(g: Grading, delta: CoarseDegree, subset):
    """Fiber points with negative support exactly the subset (region L_I)."""
    subset = frozenset(subset)
    return _fiber_points_cached(g, delta, subset, orthant_indicator(g.n, subset))


def fiber_min_coords(g: Grading, delta: CoarseDegree, subset):
    """Per-coordinate minima over fiber_points, or None when empty."""
    pts = fiber_points(g, delta, subset)
    if not pts:
        return None
    return tuple(min(p[i] for p in pts) for i in range(g.n))


def f_bound(g: Grading, subset, j, delta: CoarseDegree) -> int:
    """Sharp truncation bound for one orthant and one coordinate: the larger
    of zero and minus the least j-th coordinate over the finite fiber
    region; an empty region gives 0."""
    subset = frozenset(subset)
    if j not in subset:
        raise ValueError("coordinate %d is not constrained by the subset" % (j,))
    mins = fiber_min_coords(g, delta, subset)
    if mins is None:
        return 0
    return max(0, -mins[j])


def crude_bound(g: Grading, p) -> int:
    """Closed-form a priori bound from minor statistics of the fiber
    lattice basis: ceil(d^2 max|p_i| Q_1 Q_{d-1} / q_d)."""
    p = tuple(int(x) for x in p)
    if len(p) != g.n:
        raise ValueError("fine degree length mismatch")
    d = g.d
    if d == 0:
        return 0
    big = max(abs(x) for x in p)
    if big == 0:
        return 0
    stats = minor_stats(g.m_basis, d)
    q1 = stats.max_abs[0]
    qd1 = stats.max_abs[d - 2] if d >= 2 else 1
    num = d * d * big * q1 * qd1
    return -((-num) // stats.min_nonzero_top)


def separating_hyperplane(fan, subset):
    """Nonzero integer functional h with <h, ray_i> >= 0 for i in the subset
    and <= 0 outside it, when such a hyperplane exists; None otherwise.
    Existence is equivalent to failure of the finiteness condition."""
    subset = frozenset(subset)
    rays = fan.rays
    d = fan.dim
    cons = []
    for i, v in enumerate(rays):
        if i in subset:
            cons.append((tuple(-c for c in v), 0))  # <h, v> >= 0
        else:
            cons.append((tuple(v), 0))  # <h, v> <= 0
    for m, v in enumerate(rays):
        if m in subset:
            extra = (tuple(-c for c in v), -1)  # <h, v_m> >= 1
        else:
            extra = (tuple(v), -1)  # <h, v_m> <= -1
        pt = _feasible_point(cons + [extra], d)
        if pt is not None:
            lcm = 1
            for f in pt:
                lcm = lcm * f.denominator // math.gcd(lcm, f.denominator)
            h = tuple(int(f * lcm) for f in pt)
            gg = 0
            for x in h:
                gg = math.gcd(gg, x)
            if gg > 1:
                h = tuple(x // gg for x in h)
            return h
    return None


def clear_cone_caches():
    _orthant_kernel_witness.cache_clear()
    _fiber_points_cached.cache_clear()

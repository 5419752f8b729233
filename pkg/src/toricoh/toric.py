"""Fans, Cox data, nerve complexes, and the complete-surface census.

A fan is consumed purely combinatorially: primitive ray vectors plus the
ray-index sets of the maximal cones.  Validation is deliberately partial
(primitivity, distinctness, spanning, coverage); deeper fan axioms are
trusted from input since the algorithms only read ray/cone incidence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cmp_to_key

from .cech import sheaf_fine_dims
from .exact_linalg import IntMatrix, rank_over_field
from .grading import Grading, build_grading
from .monomials import MonomialIdeal, minimalize
from .simplicial import SimplicialComplex, reduced_cohomology_dims, simplicial_complex
from .tables import SigmaTable, sigma_table

__all__ = [
    "Fan",
    "ToricData",
    "cox_data",
    "nerve_complex",
    "nerve_cohomology_dims",
    "surface_sigma",
    "is_complete_surface",
]


@dataclass(frozen=True)
class Fan:
    dim: int
    rays: tuple  # tuple of primitive integer vectors
    max_cones: tuple  # tuple of sorted ray-index tuples (0-based)

    def __post_init__(self):
        rays = tuple(tuple(int(c) for c in v) for v in self.rays)
        object.__setattr__(self, "rays", rays)
        cones = tuple(tuple(sorted(set(int(i) for i in c))) for c in self.max_cones)
        object.__setattr__(self, "max_cones", cones)
        n = len(rays)
        for v in rays:
            if len(v) != self.dim:
                raise ValueError("ray of wrong dimension: %r" % (v,))
            g = 0
            for c in v:
                g = math.gcd(g, c)
            if g != 1:
                raise ValueError("ray %r is zero or not primitive" % (v,))
        if len(set(rays)) != n:
            raise ValueError("rays must be pairwise distinct")
        if rank_over_field(IntMatrix.from_rows(rays, cols=self.dim), 0) != self.dim:
            raise ValueError("rays do not span the ambient space (degenerate fan)")
        covered = set()
        for c in cones:
            if not c:
                raise ValueError("empty maximal cone")
            for i in c:
                if not (0 <= i < n):
                    raise ValueError("cone index %d out of range" % (i,))
            covered.update(c)
        if covered != set(range(n)):
            raise ValueError("every ray must lie in some maximal cone")

    @property
    def n_rays(self):
        return len(self.rays)


@dataclass(frozen=True)
class ToricData:
    """Cox data: the fan, the coarse grading by the ray-matrix cokernel, and
    the irrelevant ideal with one generator per maximal cone."""

    fan: Fan
    grading: Grading
    ideal: MonomialIdeal


def cox_data(fan: Fan) -> ToricData:
    rho = IntMatrix.from_rows(fan.rays, cols=fan.dim)
    grading = build_grading(rho)
    n = fan.n_rays
    gens = []
    for cone in fan.max_cones:
        gens.append(tuple(0 if i in cone else 1 for i in range(n)))
    ideal = minimalize(n, gens)
    if ideal.is_unit:
        # a single maximal cone holding every ray: affine chart, unit ideal
        if len(fan.max_cones) != 1:
            raise ValueError("maximal cones must be incomparable")
    elif len(ideal.gens) != len(fan.max_cones):
        raise ValueError("maximal cones must be incomparable")
    return ToricData(fan, grading, ideal)


def nerve_complex(x: ToricData, subset) -> SimplicialComplex:
    """Nerve on the maximal cones: a set of cones spans a face when their
    intersection still contains a ray indexed by the subset.  The empty
    subset gives the void complex."""
    subset = frozenset(subset)
    r = len(x.fan.max_cones)
    if subset - set(range(x.fan.n_rays)):
        raise ValueError("subset indexes nonexistent rays")
    if not subset:
        return SimplicialComplex(r, ())
    carriers = []
    for i in subset:
        v = frozenset(j for j, cone in enumerate(x.fan.max_cones) if i in cone)
        carriers.append(v)
    return simplicial_complex(r, carriers)


def nerve_cohomology_dims(x: ToricData, subset, char=0):
    """Sheaf cohomology dimensions at fine degrees with the given negative
    support, read off the reduced cohomology of the nerve (one degree
    lower); the base row is one exactly for the empty subset."""
    subset = frozenset(subset)
    d = x.fan.dim
    head = 1 if not subset else 0
    if not subset:
        return (head,) + (0,) * d
    red = reduced_cohomology_dims(nerve_complex(x, subset), char)
    return (head,) + tuple(red.get(i - 1, 0) for i in range(1, d + 1))


def _half(v):
    x, y = v
    return 0 if (y > 0 or (y == 0 and x > 0)) else 1


def _cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def _angular_order(rays):
    def cmp(i, j):
        hi, hj = _half(rays[i]), _half(rays[j])
        if hi != hj:
            return -1 if hi < hj else 1
        c = _cross(rays[i], rays[j])
        if c > 0:
            return -1
        if c < 0:
            return 1
        return 0

    return sorted(range(len(rays)), key=cmp_to_key(cmp))


def is_complete_surface(fan: Fan) -> bool:
    """Whether the maximal cones of a two-dimensional fan tile the plane:
    consecutive rays in angular order always span a maximal cone through an
    angle less than a half turn."""
    if fan.dim != 2:
        raise ValueError("defined for two-dimensional fans only")
    n = fan.n_rays
    if n < 3:
        return False
    order = _angular_order(fan.rays)
    cones = {c for c in fan.max_cones if len(c) == 2}
    for k in range(n):
        i, j = order[k], order[(k + 1) % n]
        if _cross(fan.rays[i], fan.rays[j]) <= 0:
            return False
        if tuple(sorted((i, j))) not in cones:
            return False
    return True


def _surface_component_count(fan: Fan, subset):
    """Connected components of the part of the fan's support not lying in
    cones disjoint from the subset; computed on the incidence graph whose
    nodes are kept rays and kept two-dimensional cones."""
    kept_rays = {i for i in range(fan.n_rays) if i in subset}
    segs = [tuple(c) for c in fan.max_cones if len(c) == 2]
    kept_segs = [c for c in segs if c[0] in subset or c[1] in subset]
    parent = {}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for i in kept_rays:
        parent[("r", i)] = ("r", i)
    for c in kept_segs:
        parent[("s", c)] = ("s", c)
    for c in kept_segs:
        for i in c:
            if i in kept_rays:
                union(("s", c), ("r", i))
    return len({find(a) for a in parent})


def surface_sigma(fan: Fan) -> SigmaTable:
    """Sheaf support table of a toric surface, from ray/cone adjacency
    alone: row 0 is the sections row; a subset enters row 1 when removing
    the cones it avoids disconnects the support; row 2 holds the full ray
    set exactly when the fan is complete."""
    if fan.dim != 2:
        raise ValueError("defined for two-dimensional fans only")
    n = fan.n_rays
    mapping = {0: {frozenset(): 1}}
    for mask in range(1, 1 << n):
        subset = frozenset(i for i in range(n) if mask >> i & 1)
        c = _surface_component_count(fan, subset)
        if c >= 2:
            mapping.setdefault(1, {})[subset] = c - 1
    if is_complete_surface(fan):
        mapping[2] = {frozenset(range(n)): 1}
    return sigma_table(n, "sheaf", "surface", mapping)

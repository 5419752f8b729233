"""Monomial ideals given by exponent vectors.

Square-free ideals are the main citizens (their generators are recorded by
support), but Frobenius powers produce general monomial generators and the
Cech machinery accepts those too.  Multigraded Tor dimensions come from
degree-restricted Koszul strands, which are definitionally exact and small
at the scales handled here.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .simplicial import cohomology_dims, labeled_complex

__all__ = [
    "MonomialIdeal",
    "minimalize",
    "ideal_from_supports",
    "frobenius_power",
    "alexander_dual",
    "alexander_dual_by_colon",
    "contains_monomial",
    "tor_dims",
    "betti_support",
]


@dataclass(frozen=True)
class MonomialIdeal:
    """n variables; gens are divisibility-minimal exponent tuples, sorted."""

    n: int
    gens: tuple

    @property
    def is_zero(self):
        return not self.gens

    @property
    def is_unit(self):
        return any(not any(g) for g in self.gens)

    @property
    def square_free(self):
        return all(all(e in (0, 1) for e in g) for g in self.gens)

    def supports(self):
        return tuple(frozenset(i for i, e in enumerate(g) if e) for g in self.gens)


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def minimalize(n, gens) -> MonomialIdeal:
    """Build the ideal on a divisibility-minimal, lexicographically sorted
    generating set.  An empty family gives the zero ideal."""
    seen = set()
    for g in gens:
        g = tuple(int(e) for e in g)
        if len(g) != n:
            raise ValueError("exponent vector of length %d, expected %d" % (len(g), n))
        if any(e < 0 for e in g):
            raise ValueError("negative exponent in generator %r" % (g,))
        seen.add(g)
    minimal = [g for g in seen if not any(h != g and _divides(h, g) for h in seen)]
    return MonomialIdeal(n, tuple(sorted(minimal)))


def ideal_from_supports(n, supports) -> MonomialIdeal:
    gens = []
    for s in supports:
        v = [0] * n
        for i in s:
            v[i] = 1
        gens.append(tuple(v))
    return minimalize(n, gens)


def contains_monomial(ideal: MonomialIdeal, exponents) -> bool:
    return any(_divides(g, exponents) for g in ideal.gens)


def frobenius_power(b: MonomialIdeal, ell: int) -> MonomialIdeal:
    """Ideal generated by the ell-th powers of the given generators."""
    if ell < 1:
        raise ValueError("power must be >= 1")
    return MonomialIdeal(b.n, tuple(tuple(e * ell for e in g) for g in b.gens))


def _minimal_covers(supports):
    """Minimal transversals of a family of nonempty supports, by exhaustive
    search over subsets of the union (ascending by size, then lex)."""
    universe = sorted(set().union(*supports)) if supports else []
    found = []
    for size in range(1, len(universe) + 1):
        for cand in combinations(universe, size):
            cs = frozenset(cand)
            if any(f <= cs for f in found):
                continue
            if all(cs & s for s in supports):
                found.append(cs)
    return found


def alexander_dual(b: MonomialIdeal) -> MonomialIdeal:
    """The dual square-free ideal: generators are the minimal vertex covers
    of the generator supports (equivalently, the minimal primes of b give
    its generators, and vice versa)."""
    if not b.square_free:
        raise ValueError("Alexander dual requires a square-free ideal")
    if b.is_zero or b.is_unit:
        raise ValueError("Alexander dual requires a nonzero proper ideal")
    return ideal_from_supports(b.n, _minimal_covers(list(b.supports())))


def alexander_dual_by_colon(b: MonomialIdeal) -> MonomialIdeal:
    """Brute-force validator: the square-free members of
    (x_1^2, ..., x_n^2) : b, minimalized.  Exponential; test scale only."""
    if not b.square_free:
        raise ValueError("requires a square-free ideal")
    if b.is_zero or b.is_unit:
        raise ValueError("requires a nonzero proper ideal")
    members = []
    sup = b.supports()
    for size in range(0, b.n + 1):
        for cand in combinations(range(b.n), size):
            cs = frozenset(cand)
            # x^F * m has a square exactly on F & supp(m)
            if all(cs & s for s in sup):
                members.append(cs)
    return ideal_from_supports(b.n, members)


def koszul_strand_bases(ideal: MonomialIdeal, p):
    """Labels of the degree-p Koszul strand of S/ideal, keyed by homological
    degree: J is present when p - indicator(J) is a monomial outside the
    ideal."""
    if any(x < 0 for x in p):
        return {}
    support = [i for i, x in enumerate(p) if x >= 1]
    bases = {}
    for size in range(0, len(support) + 1):
        labels = []
        for J in combinations(support, size):
            q = list(p)
            for i in J:
                q[i] -= 1
            if not contains_monomial(ideal, tuple(q)):
                labels.append(frozenset(J))
        if labels:
            bases[size] = labels
    return bases


def tor_dims(ideal: MonomialIdeal, p, char: int = 0) -> dict:
    """dim Tor_j(S/ideal, k) in the single fine degree p, as {j: dim} with
    zero entries omitted.  Negative degrees have no Tor and return {}."""
    p = tuple(int(x) for x in p)
    if len(p) != ideal.n:
        raise ValueError("degree length mismatch")
    bases = koszul_strand_bases(ideal, p)
    if not bases:
        return {}
    cx = labeled_complex(bases, step=-1)
    dims = cohomology_dims(cx, char)
    return {j: d for j, d in dims.items() if d}


def betti_support(ideal: MonomialIdeal, char: int = 0) -> dict:
    """All (j, p) with Tor_j(S/ideal, k)_p nonzero, mapped to the dimension.

    Only square-free degrees are scanned; for a square-free ideal every
    Betti degree is square-free (the test suite re-validates this on a
    bounding box rather than assuming it).
    """
    if not ideal.square_free:
        raise ValueError("betti_support requires a square-free ideal")
    out = {}
    for r in range(0, ideal.n + 1):
        for sup in combinations(range(ideal.n), r):
            p = tuple(1 if i in sup else 0 for i in range(ideal.n))
            for j, d in tor_dims(ideal, p, char).items():
                out[(j, p)] = d
    return out

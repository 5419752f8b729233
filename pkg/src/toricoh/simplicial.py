"""Finite complexes of vector spaces with subset-labeled bases.

The same engine drives three constructions: degree-restricted Cech
complexes (labels grow by one element per step), Koszul strands (labels
shrink), and reduced simplicial cochain complexes.  A component map
J -> J' carries the sign (-1)**(e-1) where e is the 1-based position of
the moved element in the larger sorted set; the global choice of sign
does not affect any dimension.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .exact_linalg import IntMatrix, rank_over_field

__all__ = [
    "LabeledComplex",
    "SimplicialComplex",
    "labeled_complex",
    "simplicial_complex",
    "cohomology_dims",
    "reduced_cohomology_dims",
    "euler_characteristic",
]


@dataclass(frozen=True)
class LabeledComplex:
    """Bases per integer degree, labeled by frozensets.

    ``step`` is +1 when the differential inserts one element (cochain
    style) and -1 when it deletes one (Koszul style).
    """

    bases: tuple  # tuple of (degree, tuple-of-frozensets), sorted by degree
    step: int

    def degrees(self):
        return [g for g, _ in self.bases]

    def basis(self, degree):
        for g, labels in self.bases:
            if g == degree:
                return labels
        return ()

    def dim(self, degree):
        return len(self.basis(degree))


def labeled_complex(bases, step=1) -> LabeledComplex:
    if step not in (1, -1):
        raise ValueError("step must be +1 or -1")
    canon = []
    for g in sorted(bases):
        labels = sorted({frozenset(l) for l in bases[g]}, key=lambda s: tuple(sorted(s)))
        if labels:
            canon.append((int(g), tuple(labels)))
    return LabeledComplex(tuple(canon), step)


def _insertion_sign(element, larger_sorted):
    # (-1)**(e-1), e the 1-based position of element in the larger label
    return -1 if larger_sorted.index(element) % 2 else 1


def _differential(cx: LabeledComplex, g):
    """Sparse differential out of degree g: list over source labels of
    [(target index, sign), ...].  Targets missing from the basis are
    simply dropped (the ambient rule: absent labels are zero)."""
    src = cx.basis(g)
    tgt = cx.basis(g + cx.step)
    index = {l: i for i, l in enumerate(tgt)}
    universe = {e for l in tgt for e in l} if cx.step == 1 else None
    out = []
    for label in src:
        cols = []
        if cx.step == 1:
            for e in universe - label:
                t = label | {e}
                i = index.get(t)
                if i is not None:
                    cols.append((i, _insertion_sign(e, sorted(t))))
        else:
            sorted_label = sorted(label)
            for e in sorted_label:
                t = label - {e}
                i = index.get(t)
                if i is not None:
                    cols.append((i, _insertion_sign(e, sorted_label)))
        out.append(cols)
    return out, len(tgt)


def _compose_is_zero(d1, d2):
    # d1: out of degree g, d2: out of degree g+step; checks d2 . d1 = 0
    acc = {}
    for s, cols in enumerate(d1):
        for mid, sgn1 in cols:
            for tgt, sgn2 in d2[mid]:
                key = (s, tgt)
                acc[key] = acc.get(key, 0) + sgn1 * sgn2
    return all(v == 0 for v in acc.values())


def _rank_of(diff, n_targets, char):
    rows = []
    for cols in diff:
        row = [0] * n_targets
        for i, s in cols:
            row[i] = s
        rows.append(row)
    rows = [r for r in rows if any(r)]
    if not rows or n_targets == 0:
        return 0
    return rank_over_field(IntMatrix.from_rows(rows, cols=n_targets), char)


def cohomology_dims(cx: LabeledComplex, char: int = 0) -> dict:
    """Dimension of the (co)homology of the complex at every degree.

    Raises ValueError when the induced maps do not compose to zero, which
    can only happen for hand-built label families that are not closed in
    the appropriate sense.
    """
    degs = cx.degrees()
    if not degs:
        return {}
    diffs = {}
    for g in degs:
        diffs[g] = _differential(cx, g)
    for g in degs:
        nxt = g + cx.step
        if nxt in diffs and cx.dim(g) and cx.dim(nxt):
            if not _compose_is_zero(diffs[g][0], diffs[nxt][0]):
                raise ValueError("differential does not square to zero at degree %d" % g)
    ranks = {g: _rank_of(d, n, char) for g, (d, n) in diffs.items()}
    out = {}
    for g in degs:
        incoming = ranks.get(g - cx.step, 0)
        out[g] = cx.dim(g) - ranks[g] - incoming
        assert out[g] >= 0
    return out


def euler_characteristic(cx: LabeledComplex) -> int:
    return sum((-1) ** g * cx.dim(g) for g in cx.degrees())


@dataclass(frozen=True)
class SimplicialComplex:
    """Abstract simplicial complex stored by its maximal faces.

    ``maximal == ()`` is the void complex (no faces at all); the complex
    whose only face is the empty set is ``maximal == (frozenset(),)``.
    """

    n_vertices: int
    maximal: tuple

    @property
    def is_void(self):
        return not self.maximal

    def faces(self):
        if self.is_void:
            return set()
        out = {frozenset()}
        for m in self.maximal:
            ms = sorted(m)
            for k in range(1, len(ms) + 1):
                out.update(frozenset(c) for c in combinations(ms, k))
        return out


def simplicial_complex(n_vertices, faces) -> SimplicialComplex:
    fs = [frozenset(f) for f in faces]
    for f in fs:
        for v in f:
            if not (0 <= v < n_vertices):
                raise ValueError("vertex %r out of range" % (v,))
    maximal = [f for f in fs if not any(f < g for g in fs)]
    maximal = sorted(set(maximal), key=lambda s: (len(s), tuple(sorted(s))))
    return SimplicialComplex(n_vertices, tuple(maximal))


def reduced_cohomology_dims(k: SimplicialComplex, char: int = 0) -> dict:
    """Reduced cohomology dimensions, keyed by degree starting at -1.

    The void complex has no reduced cohomology at all; the empty complex
    {{}} has a single class in degree -1.
    """
    if k.is_void:
        return {}
    by_deg = {}
    for f in k.faces():
        by_deg.setdefault(len(f), []).append(f)
    cx = labeled_complex(by_deg, step=1)
    dims = cohomology_dims(cx, char)
    return {g - 1: d for g, d in dims.items()}

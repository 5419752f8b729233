"""Support tables and Betti tables shared across the engine."""

from __future__ import annotations

from dataclasses import dataclass

__all__ = ["SigmaTable", "BettiTable", "sigma_table", "betti_table"]


@dataclass(frozen=True)
class SigmaTable:
    """For each cohomological index i, the subsets I of {1..n} supporting a
    nonzero group, with the dimension at the -1-indicator degree of I.

    ``kind`` is "local" (ring cohomology with supports) or "sheaf" (twisted
    structure sheaf).  Row 0 is the documented sections row: for the local
    kind it records the ring itself in nonnegative fine degrees (dimension
    one at I = {}), not the vanishing degree-0 local cohomology.  ``source``
    tracks which path produced the table and never takes part in equality.
    """

    n: int
    kind: str
    entries: tuple  # tuple of (i, tuple of (sorted subset tuple, dim))
    source: str

    def __eq__(self, other):
        if not isinstance(other, SigmaTable):
            return NotImplemented
        return (self.n, self.kind, self.entries) == (other.n, other.kind, other.entries)

    def __hash__(self):
        return hash((self.n, self.kind, self.entries))

    def mapping(self):
        return {
            i: {frozenset(subset): dim for subset, dim in row} for i, row in self.entries
        }

    def row(self, i):
        for k, row in self.entries:
            if k == i:
                return {frozenset(subset): dim for subset, dim in row}
        return {}

    def support(self, i):
        return set(self.row(i))

    def indices(self):
        return [i for i, _ in self.entries]


def sigma_table(n, kind, source, mapping) -> SigmaTable:
    if kind not in ("local", "sheaf"):
        raise ValueError("kind must be 'local' or 'sheaf'")
    entries = []
    for i in sorted(mapping):
        row = mapping[i]
        if not row:
            continue
        if any(d < 1 for d in row.values()):
            raise ValueError("support table rows must have positive dimensions")
        canon = tuple(
            (tuple(sorted(subset)), int(dim))
            for subset, dim in sorted(row.items(), key=lambda kv: (len(kv[0]), tuple(sorted(kv[0]))))
        )
        entries.append((int(i), canon))
    return SigmaTable(n, kind, tuple(entries), source)


@dataclass(frozen=True)
class BettiTable:
    """Multiset of (homological index, coarse degree) with multiplicities."""

    entries: tuple  # tuple of (j, CoarseDegree, multiplicity)

    def levels(self):
        """Map homological index -> set of coarse degrees."""
        out = {}
        for j, alpha, _ in self.entries:
            out.setdefault(j, set()).add(alpha)
        return out

    def max_level(self):
        return max((j for j, _, _ in self.entries), default=-1)


def betti_table(rows) -> BettiTable:
    agg = {}
    for j, alpha, mult in rows:
        j = int(j)
        mult = int(mult)
        if j < 0 or mult < 1:
            raise ValueError("betti rows need j >= 0 and multiplicity >= 1")
        agg[(j, alpha)] = agg.get((j, alpha), 0) + mult
    entries = tuple((j, alpha, m) for (j, alpha), m in sorted(agg.items(), key=lambda kv: (kv[0][0], kv[0][1].free, kv[0][1].residues)))
    return BettiTable(entries)

"""Grouping structure induced by a relation: partitions versus covers."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import NotTransitive
from .relation import Relation, StateSpace, is_transitive, iter_bits, popcount, transitivity_violations


@dataclass(frozen=True)
class ToleranceClass:
    """Maximal set of mutually indistinguishable states."""

    space: StateSpace
    mask: int

    @property
    def members(self) -> frozenset[str]:
        return self.space.members(self.mask)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(self.space.labels[i] for i in iter_bits(self.mask))

    def __contains__(self, label):
        return label in self.space and bool(self.mask >> self.space.index(label) & 1)

    def __len__(self):
        return popcount(self.mask)

    def is_clique(self, rel: Relation) -> bool:
        return all(rel.rows[i] & self.mask == self.mask for i in iter_bits(self.mask))

    def is_maximal(self, rel: Relation) -> bool:
        outside = rel.space.full_mask & ~self.mask
        return not any(rel.rows[j] & self.mask == self.mask for j in iter_bits(outside))


class Structure(enum.Enum):
    PARTITION = "Partition"
    COVER = "Cover"


@dataclass(frozen=True)
class StructureKind:
    kind: Structure
    # (state, indices of the classes containing it) for each borderline state
    overlaps: tuple[tuple[str, tuple[int, ...]], ...] = ()

    @property
    def borderline_states(self) -> tuple[str, ...]:
        return tuple(s for s, _ in self.overlaps)


@dataclass(frozen=True)
class VaguenessReport:
    violation_count: int
    borderline_state_count: int
    class_count: int
    kind: Structure
    borderline_states: tuple[str, ...] = ()


def mask_sort_key(mask: int) -> tuple[int, ...]:
    return tuple(iter_bits(mask))


def maximal_clique_masks(rel: Relation) -> list[int]:
    """Maximal cliques of the indistinguishability graph as bitmasks.

    Bron-Kerbosch with Tomita pivoting over integer bitsets. Output is
    sorted lexicographically by member index.
    """
    nbr = [row & ~(1 << i) for i, row in enumerate(rel.rows)]
    found: list[int] = []

    def expand(clique: int, cand: int, excl: int) -> None:
        if not cand and not excl:
            found.append(clique)
            return
        pivot = max(iter_bits(cand | excl), key=lambda u: popcount(cand & nbr[u]))
        for v in iter_bits(cand & ~nbr[pivot]):
            bit = 1 << v
            expand(clique | bit, cand & nbr[v], excl & nbr[v])
            cand &= ~bit
            excl |= bit

    expand(0, rel.space.full_mask, 0)
    found.sort(key=mask_sort_key)
    return found


def equivalence_classes(rel: Relation) -> list[frozenset[str]]:
    """Quotient partition of a transitive relation, ordered by smallest member."""
    verdict = is_transitive(rel)
    if not verdict.is_precise:
        raise NotTransitive(verdict.witness)
    seen = 0
    classes = []
    for i, row in enumerate(rel.rows):
        if not seen >> i & 1:
            classes.append(rel.space.members(row))
            seen |= row
    return classes


def tolerance_classes(rel: Relation) -> list[ToleranceClass]:
    return [ToleranceClass(rel.space, m) for m in maximal_clique_masks(rel)]


def structure_kind(classes: list[ToleranceClass], space: StateSpace) -> StructureKind:
    overlaps = []
    for i, label in enumerate(space.labels):
        owners = tuple(k for k, cls in enumerate(classes) if cls.mask >> i & 1)
        if len(owners) > 1:
            overlaps.append((label, owners))
    if overlaps:
        return StructureKind(Structure.COVER, tuple(overlaps))
    return StructureKind(Structure.PARTITION)


def vagueness_report(rel: Relation) -> VaguenessReport:
    classes = tolerance_classes(rel)
    kind = structure_kind(classes, rel.space)
    return VaguenessReport(
        violation_count=len(transitivity_violations(rel)),
        borderline_state_count=len(kind.overlaps),
        class_count=len(classes),
        kind=kind.kind,
        borderline_states=kind.borderline_states,
    )

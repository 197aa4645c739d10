"""States of the world and the indistinguishability relation over them.

A relation is stored as one integer bit row per state: bit ``j`` of
``rows[i]`` is set iff state ``i`` cannot be told apart from state ``j``.
Relations are immutable; observing a difference returns a new relation.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import InvalidStateSpace, InvariantBreach, SelfDistinction, UnknownLabel


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class StateSpace:
    """Ordered, finite set of labeled states."""

    labels: tuple[str, ...]

    def __post_init__(self):
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        if not labels:
            raise InvalidStateSpace("a state space needs at least one state")
        for label in labels:
            if not isinstance(label, str) or not label or any(ch.isspace() for ch in label):
                raise InvalidStateSpace(f"invalid state label {label!r}")
        if len(set(labels)) != len(labels):
            dupes = sorted({x for x in labels if labels.count(x) > 1})
            raise InvalidStateSpace(f"duplicate state labels: {', '.join(dupes)}")

    @classmethod
    def of(cls, *labels: str) -> StateSpace:
        return cls(tuple(labels))

    @classmethod
    def numbered(cls, n: int, prefix: str = "s") -> StateSpace:
        return cls(tuple(f"{prefix}{i}" for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.labels)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {label: i for i, label in enumerate(self.labels)}

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except (KeyError, TypeError):
            raise UnknownLabel(label) from None

    def __len__(self):
        return self.n

    def __iter__(self):
        return iter(self.labels)

    def __contains__(self, label):
        return label in self._index

    def mask(self, labels: Iterable[str]) -> int:
        m = 0
        for label in labels:
            m |= 1 << self.index(label)
        return m

    def members(self, mask: int) -> frozenset[str]:
        return frozenset(self.labels[i] for i in iter_bits(mask))

    def ordered(self, labels: Iterable[str]) -> tuple[str, ...]:
        """Labels sorted by state index."""
        return tuple(sorted(labels, key=self.index))


class Knowledge(enum.Enum):
    PRECISE = "Precise"
    VAGUE = "Vague"


@dataclass(frozen=True)
class KnowledgeClassification:
    kind: Knowledge
    witness: tuple[str, str, str] | None = None

    def __post_init__(self):
        if (self.kind is Knowledge.VAGUE) != (self.witness is not None):
            raise ValueError("a witness triple is present iff knowledge is vague")

    @property
    def is_precise(self) -> bool:
        return self.kind is Knowledge.PRECISE


@dataclass(frozen=True)
class ObservationLog:
    """Ordered record of observed differences, one unordered pair per entry."""

    entries: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        entries = tuple(tuple(e) for e in self.entries)
        for e in entries:
            if len(e) != 2:
                raise ValueError(f"observation {e!r} must name exactly two states")
            if e[0] == e[1]:
                raise SelfDistinction(e[0])
        object.__setattr__(self, "entries", entries)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)


@dataclass(frozen=True)
class IndistinguishabilityRelation:
    """Reflexive, symmetric relation over a state space (not necessarily transitive)."""

    space: StateSpace
    rows: tuple[int, ...] = field(repr=False)

    def __post_init__(self):
        rows = tuple(self.rows)
        object.__setattr__(self, "rows", rows)
        n = self.space.n
        if len(rows) != n:
            raise InvariantBreach(f"expected {n} rows, got {len(rows)}")
        full = self.space.full_mask
        for i, row in enumerate(rows):
            if row & ~full:
                raise InvariantBreach(f"row {i} references states outside the space")
            if not row >> i & 1:
                raise InvariantBreach(f"not reflexive at {self.space.labels[i]!r}")
            for j in iter_bits(row):
                if not rows[j] >> i & 1:
                    raise InvariantBreach(
                        f"not symmetric at ({self.space.labels[i]!r}, {self.space.labels[j]!r})"
                    )

    @property
    def n(self) -> int:
        return self.space.n

    def related(self, i: int, j: int) -> bool:
        return bool(self.rows[i] >> j & 1)

    def indistinguishable(self, a: str, b: str) -> bool:
        return self.related(self.space.index(a), self.space.index(b))

    def neighborhood(self, label: str) -> frozenset[str]:
        return self.space.members(self.rows[self.space.index(label)])

    def pairs(self) -> list[tuple[str, str]]:
        """Indistinguishable off-diagonal pairs (i < j) in lexicographic index order."""
        labels = self.space.labels
        return [
            (labels[i], labels[j])
            for i in range(self.n)
            for j in iter_bits(self.rows[i] >> (i + 1) << (i + 1))
        ]

    @property
    def encoding(self) -> int:
        """Off-diagonal bitmask: bit k is set iff pair k (lexicographic, i < j) is related."""
        code = 0
        k = 0
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if self.rows[i] >> j & 1:
                    code |= 1 << k
                k += 1
        return code

    @classmethod
    def from_encoding(cls, space: StateSpace, code: int) -> IndistinguishabilityRelation:
        n = space.n
        rows = [1 << i for i in range(n)]
        k = 0
        for i in range(n):
            for j in range(i + 1, n):
                if code >> k & 1:
                    rows[i] |= 1 << j
                    rows[j] |= 1 << i
                k += 1
        if code >> k:
            raise ValueError(f"encoding {code} has bits beyond the {k} pairs of {n} states")
        return cls(space, tuple(rows))

    def __str__(self):
        pairs = ", ".join(f"{a}~{b}" for a, b in self.pairs())
        return f"<relation on {{{','.join(self.space.labels)}}}: {pairs or 'identity'}>"


Relation = IndistinguishabilityRelation


def new_complete(space: StateSpace) -> Relation:
    """No-knowledge baseline: every pair of states is indistinguishable."""
    return Relation(space, (space.full_mask,) * space.n)


def new_identity(space: StateSpace) -> Relation:
    return Relation(space, tuple(1 << i for i in range(space.n)))


def from_indistinguishable_pairs(space: StateSpace, pairs: Iterable[Sequence[str]]) -> Relation:
    rows = [1 << i for i in range(space.n)]
    for a, b in pairs:
        i, j = space.index(a), space.index(b)
        rows[i] |= 1 << j
        rows[j] |= 1 << i
    return Relation(space, tuple(rows))


def observe_difference(rel: Relation, a: str, b: str) -> Relation:
    """Return ``rel`` with the pair {a, b} made distinguishable."""
    i, j = rel.space.index(a), rel.space.index(b)
    if i == j:
        raise SelfDistinction(a)
    rows = list(rel.rows)
    rows[i] &= ~(1 << j)
    rows[j] &= ~(1 << i)
    return Relation(rel.space, tuple(rows))


def apply_observations(rel: Relation, log: ObservationLog | Iterable[Sequence[str]]) -> Relation:
    if not isinstance(log, ObservationLog):
        log = ObservationLog(tuple(log))
    for a, b in log:
        rel = observe_difference(rel, a, b)
    return rel


def indistinguishable(rel: Relation, a: str, b: str) -> bool:
    return rel.indistinguishable(a, b)


def neighborhood(rel: Relation, label: str) -> frozenset[str]:
    return rel.neighborhood(label)


def distinguishable_pair_count(rel: Relation) -> int:
    """Size of the knowledge set: ordered pairs outside U."""
    return rel.n * rel.n - sum(popcount(r) for r in rel.rows)


def _violations(rel: Relation) -> Iterator[tuple[int, int, int]]:
    # lexicographic (a, b, c); the first hit is the smallest triple overall
    rows = rel.rows
    for a in range(rel.n):
        for b in iter_bits(rows[a] & ~(1 << a)):
            for c in iter_bits(rows[b] & ~rows[a]):
                yield a, b, c


def is_transitive(rel: Relation) -> KnowledgeClassification:
    labels = rel.space.labels
    for a, b, c in _violations(rel):
        return KnowledgeClassification(Knowledge.VAGUE, (labels[a], labels[b], labels[c]))
    return KnowledgeClassification(Knowledge.PRECISE)


def transitivity_violations(rel: Relation) -> list[tuple[str, str, str]]:
    """All triples (a, b, c) with a~b, b~c, a and c distinguishable, a before c."""
    labels = rel.space.labels
    return [(labels[a], labels[b], labels[c]) for a, b, c in _violations(rel) if a < c]

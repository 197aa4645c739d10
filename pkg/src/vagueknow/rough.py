"""Cores, lower/upper boundaries and information sets.

A core is a non-empty fixed point of the closure

    closure(S) = {w in states | w ~ v for every v in S}

which is the same thing as a maximal clique of the relation. The upper
boundary of a core is one layer of indistinguishability around it: every
state related to at least one core state. Nothing is iterated beyond that
single layer.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable

from .errors import BodyOutOfBounds, NotACore
from .relation import Relation, StateSpace, is_transitive, iter_bits, popcount
from .tolerance import maximal_clique_masks


def closure_mask(rel: Relation, mask: int) -> int:
    out = rel.space.full_mask
    for i in iter_bits(mask):
        out &= rel.rows[i]
    return out


def upper_mask(rel: Relation, mask: int) -> int:
    out = 0
    for i in iter_bits(mask):
        out |= rel.rows[i]
    return out


@dataclass(frozen=True)
class Core:
    relation: Relation
    mask: int

    def __post_init__(self):
        if not self.mask or closure_mask(self.relation, self.mask) != self.mask:
            space = self.relation.space
            raise NotACore(
                _ordered(space, self.mask), _ordered(space, closure_mask(self.relation, self.mask))
            )

    @property
    def members(self) -> frozenset[str]:
        return self.relation.space.members(self.mask)

    @property
    def labels(self) -> tuple[str, ...]:
        return _ordered(self.relation.space, self.mask)

    def __len__(self):
        return popcount(self.mask)

    def __repr__(self):
        return f"Core({{{','.join(self.labels)}}})"


@dataclass(frozen=True)
class InformationSet:
    """Lower boundary (core), body and upper boundary of an expressed set of states."""

    lower: Core
    body: frozenset[str]
    upper: frozenset[str]

    @property
    def relation(self) -> Relation:
        return self.lower.relation

    @property
    def boundary_region(self) -> frozenset[str]:
        return self.upper - self.lower.members

    def is_faithful(self) -> bool:
        return self.body == self.upper


class Expression(enum.Enum):
    PRECISE = "PreciseExpression"
    VAGUE = "VagueExpression"


@dataclass(frozen=True)
class ExpressionClassification:
    kind: Expression
    boundary_region: frozenset[str]


def _ordered(space: StateSpace, mask: int) -> tuple[str, ...]:
    return tuple(space.labels[i] for i in iter_bits(mask))


def _as_core(rel: Relation, S) -> Core:
    if isinstance(S, Core):
        if S.relation != rel:
            raise ValueError("core belongs to a different relation")
        return S
    return Core(rel, rel.space.mask(S))


def cores(rel: Relation) -> list[Core]:
    return [Core(rel, m) for m in maximal_clique_masks(rel)]


def is_core(rel: Relation, S: Iterable[str]) -> bool:
    mask = rel.space.mask(S)
    return mask != 0 and closure_mask(rel, mask) == mask


def upper_boundary(rel: Relation, S) -> frozenset[str]:
    core = _as_core(rel, S)
    return rel.space.members(upper_mask(rel, core.mask))


def make_information_set(rel: Relation, S, body: Iterable[str] | None = None) -> InformationSet:
    """Build (lower, body, upper) around a core.

    Without ``body`` the expression is faithful: it admits every state that
    cannot be told apart from some core state, so body equals the upper
    boundary.
    """
    core = _as_core(rel, S)
    upper = upper_mask(rel, core.mask)
    if body is None:
        body_mask = upper
    else:
        body = list(body)
        unknown = [x for x in body if x not in rel.space]
        if unknown:
            raise BodyOutOfBounds(f"body contains states outside the space: {', '.join(map(str, unknown))}")
        body_mask = rel.space.mask(body)
        if core.mask & ~body_mask:
            raise BodyOutOfBounds(
                f"body misses core states {{{','.join(_ordered(rel.space, core.mask & ~body_mask))}}}"
            )
        if body_mask & ~upper:
            raise BodyOutOfBounds(
                f"body exceeds the upper boundary with {{{','.join(_ordered(rel.space, body_mask & ~upper))}}}"
            )
    return InformationSet(core, rel.space.members(body_mask), rel.space.members(upper))


def classify_expression(info: InformationSet) -> ExpressionClassification:
    region = info.boundary_region
    kind = Expression.VAGUE if region else Expression.PRECISE
    return ExpressionClassification(kind, region)


class Prop1Status(enum.Enum):
    HOLDS = "Holds"
    PRECONDITION_NOT_MET = "PreconditionNotMet"
    VIOLATED = "Violated"


@dataclass(frozen=True)
class Prop1Result:
    status: Prop1Status
    # one distinguishable pair (inside body, outside body)
    witness: tuple[str, str] | None = None
    # lower-boundary / outside-upper pairs that turned out indistinguishable
    violations: tuple[tuple[str, str], ...] = ()
    pairs_checked: int = 0
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status is not Prop1Status.VIOLATED


def check_proposition1(rel: Relation, info: InformationSet) -> Prop1Result:
    """Check that a non-trivial information set separates some inside state from an outside one.

    When the lower boundary is non-empty and the upper boundary is not the
    whole space, every lower-boundary state must be distinguishable from
    every state beyond the upper boundary. All such pairs are checked.
    """
    space = rel.space
    lower = space.mask(info.lower.members)
    upper = space.mask(info.upper)
    body = space.mask(info.body)
    unmet = []
    if not lower:
        unmet.append("lower boundary is empty")
    if upper == space.full_mask:
        unmet.append("upper boundary is the whole space")
    if unmet:
        return Prop1Result(Prop1Status.PRECONDITION_NOT_MET, detail="; ".join(unmet))

    outside = space.full_mask & ~upper
    bad = []
    checked = 0
    for i in iter_bits(lower):
        checked += popcount(outside)
        for k in iter_bits(rel.rows[i] & outside):
            bad.append((space.labels[i], space.labels[k]))
    if bad:
        return Prop1Result(
            Prop1Status.VIOLATED,
            violations=tuple(bad),
            pairs_checked=checked,
            detail=f"{len(bad)} core/outside pair(s) indistinguishable",
        )
    # the smallest core state and the smallest state beyond the upper boundary
    w1 = (lower & -lower).bit_length() - 1
    w3 = (outside & -outside).bit_length() - 1
    if not (body >> w1 & 1) or body >> w3 & 1 or rel.related(w1, w3):
        return Prop1Result(
            Prop1Status.VIOLATED,
            pairs_checked=checked,
            detail=f"witness ({space.labels[w1]}, {space.labels[w3]}) does not separate the body",
        )
    return Prop1Result(Prop1Status.HOLDS, witness=(space.labels[w1], space.labels[w3]), pairs_checked=checked)


class Prop2Status(enum.Enum):
    TRANSITIVE_ALL_SHARP = "TransitiveAllSharp"
    NON_TRANSITIVE_WITNESS = "NonTransitiveWitness"
    NO_WITNESS_FOUND = "NoWitnessFound"
    VIOLATED = "Violated"


@dataclass(frozen=True)
class Prop2Result:
    status: Prop2Status
    core: Core | None = None
    boundary_region: frozenset[str] = frozenset()
    cores_checked: int = 0

    @property
    def ok(self) -> bool:
        return self.status in (Prop2Status.TRANSITIVE_ALL_SHARP, Prop2Status.NON_TRANSITIVE_WITNESS)


def check_proposition2(rel: Relation) -> Prop2Result:
    """Transitive relations give only sharp faithful expressions; others give a vague one."""
    transitive = is_transitive(rel).is_precise
    all_cores = cores(rel)
    for core in all_cores:
        info = make_information_set(rel, core)
        region = info.boundary_region
        if transitive and region:
            return Prop2Result(Prop2Status.VIOLATED, core, region, len(all_cores))
        if not transitive and region:
            return Prop2Result(Prop2Status.NON_TRANSITIVE_WITNESS, core, region, len(all_cores))
    if transitive:
        return Prop2Result(Prop2Status.TRANSITIVE_ALL_SHARP, cores_checked=len(all_cores))
    return Prop2Result(Prop2Status.NO_WITNESS_FOUND, cores_checked=len(all_cores))


"""Exhaustive verification over every tolerance relation on a few states.

Every reflexive symmetric relation on n labeled states is visited once, by
off-diagonal bit encoding. A clean run is evidence that both propositions
hold for n states, not a proof for arbitrary state spaces.

Work splits into encoding ranges; merging range reports is order
independent, so a parallel run yields the same report as a serial one.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from math import comb
from typing import Iterator

from .errors import CapExceeded
from .generators import SplitMix64
from .relation import Relation, StateSpace, is_transitive, iter_bits
from .rough import Prop1Status, check_proposition1, check_proposition2, cores, make_information_set
from .tolerance import Structure, structure_kind, tolerance_classes

MAX_N = 6
DEFAULT_SEED = 0


def _check_n(n: int) -> None:
    if n > MAX_N:
        raise CapExceeded(n, MAX_N)
    if n < 1:
        raise ValueError("n must be at least 1")


def pair_count(n: int) -> int:
    return n * (n - 1) // 2


def enumerate_relations(n: int, start: int = 0, stop: int | None = None) -> Iterator[Relation]:
    """Yield every relation on states s0..s{n-1} in increasing encoding order."""
    _check_n(n)
    space = StateSpace.numbered(n)
    total = 1 << pair_count(n)
    stop = total if stop is None else min(stop, total)
    for code in range(start, stop):
        yield Relation.from_encoding(space, code)


def bell_number(n: int) -> int:
    """Number of equivalence relations on n labeled elements."""
    bell = [1]
    for m in range(n):
        bell.append(sum(comb(m, k) * bell[k] for k in range(m + 1)))
    return bell[n]


@dataclass(frozen=True)
class CensusReport:
    n: int
    total_relations: int
    transitive_count: int
    vague_count: int
    cover_count: int
    max_boundary_region: int

    def to_dict(self) -> dict:
        return asdict(self)


def census(n: int) -> CensusReport:
    total = transitive = covers = widest = 0
    for rel in enumerate_relations(n):
        total += 1
        if is_transitive(rel).is_precise:
            transitive += 1
        if structure_kind(tolerance_classes(rel), rel.space).kind is Structure.COVER:
            covers += 1
        for core in cores(rel):
            widest = max(widest, len(make_information_set(rel, core).boundary_region))
    return CensusReport(n, total, transitive, total - transitive, covers, widest)


@dataclass(frozen=True)
class VerificationReport:
    proposition: int
    n: int
    relations_checked: int = 0
    information_sets_checked: int = 0
    violations: tuple[tuple[int, str], ...] = field(default=())
    preconditions_unmet: int = 0

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "proposition": self.proposition,
            "n": self.n,
            "relations_checked": self.relations_checked,
            "information_sets_checked": self.information_sets_checked,
            "violations": [{"encoding": code, "detail": detail} for code, detail in self.violations],
            "preconditions_unmet": self.preconditions_unmet,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def merge_reports(reports) -> VerificationReport:
    reports = list(reports)
    first = reports[0]
    if any((r.proposition, r.n) != (first.proposition, first.n) for r in reports):
        raise ValueError("cannot merge reports for different propositions or state counts")
    return VerificationReport(
        first.proposition,
        first.n,
        sum(r.relations_checked for r in reports),
        sum(r.information_sets_checked for r in reports),
        tuple(sorted(v for r in reports for v in r.violations)),
        sum(r.preconditions_unmet for r in reports),
    )


def intermediate_body(rel: Relation, core, seed: int = DEFAULT_SEED) -> frozenset[str]:
    """Core plus a pseudo-random half of its boundary region.

    The generator is keyed on (seed, relation encoding, core mask), so the
    choice does not depend on visiting order.
    """
    upper = 0
    for i in iter_bits(core.mask):
        upper |= rel.rows[i]
    rng = SplitMix64(seed ^ rel.encoding * 0x9E3779B1 ^ core.mask << 40)
    body = core.mask
    for i in iter_bits(upper & ~core.mask):
        if rng.next_u64() >> 63:
            body |= 1 << i
    return rel.space.members(body)


def _verify_prop1(rel: Relation, seed: int):
    checked = unmet = 0
    violations = []
    for core in cores(rel):
        faithful = make_information_set(rel, core)
        bodies = (core.members, faithful.upper, intermediate_body(rel, core, seed))
        for body in bodies:
            info = make_information_set(rel, core, body)
            result = check_proposition1(rel, info)
            checked += 1
            if result.status is Prop1Status.PRECONDITION_NOT_MET:
                unmet += 1
            elif not result.ok:
                labels = ",".join(rel.space.ordered(core.members))
                violations.append((rel.encoding, f"core {{{labels}}}: {result.detail}"))
    return checked, unmet, violations


def _verify_prop2(rel: Relation):
    result = check_proposition2(rel)
    violations = []
    if not result.ok:
        where = f" at core {{{','.join(result.core.labels)}}}" if result.core else ""
        violations.append((rel.encoding, f"{result.status.value}{where}"))
    return result.cores_checked, 0, violations


def verify_range(prop: int, n: int, start: int, stop: int, seed: int = DEFAULT_SEED) -> VerificationReport:
    if prop not in (1, 2):
        raise ValueError(f"unknown proposition {prop}")
    relations = sets = unmet = 0
    violations = []
    for rel in enumerate_relations(n, start, stop):
        relations += 1
        if prop == 1:
            c, u, v = _verify_prop1(rel, seed)
        else:
            c, u, v = _verify_prop2(rel)
        sets += c
        unmet += u
        violations.extend(v)
    return VerificationReport(prop, n, relations, sets, tuple(sorted(violations)), unmet)


def _verify_chunk(args):
    return verify_range(*args)


def verify_proposition(prop: int, n: int, workers: int = 1, seed: int = DEFAULT_SEED) -> VerificationReport:
    """Check one proposition on every relation over n states.

    For proposition 1 each core is tried with three bodies: the core
    itself, the upper boundary, and a seeded intermediate. For proposition
    2 every relation is checked once.
    """
    if prop not in (1, 2):
        raise ValueError(f"unknown proposition {prop}")
    _check_n(n)
    total = 1 << pair_count(n)
    if workers <= 1 or total < 64:
        return verify_range(prop, n, 0, total, seed)
    step = -(-total // (workers * 4))
    chunks = [(prop, n, lo, min(lo + step, total), seed) for lo in range(0, total, step)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return merge_reports(pool.map(_verify_chunk, chunks))

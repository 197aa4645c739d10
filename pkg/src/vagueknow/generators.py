"""Relation generators: perceptual thresholds and seeded random relations."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import LengthMismatch
from .relation import Relation, StateSpace

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """SplitMix64 (Steele, Lea & Flood 2014).

    Chosen because its output is fully specified by a few lines of 64-bit
    integer arithmetic, so any port reproduces the same stream for a seed::

        state += 0x9E3779B97F4A7C15
        z = state
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
        z = (z ^ (z >> 27)) * 0x94D049BB133111EB
        return z ^ (z >> 31)            # all arithmetic mod 2**64

    ``random()`` maps the top 53 bits to a float in [0, 1).
    """

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def random(self) -> float:
        return (self.next_u64() >> 11) * 2.0**-53

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound) by rejection."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - (1 << 64) % bound
        while True:
            x = self.next_u64()
            if x < limit:
                return x % bound


@dataclass(frozen=True)
class ThresholdSpec:
    """One numeric attribute per state plus a discrimination threshold."""

    values: tuple[float, ...]
    epsilon: float

    def __post_init__(self):
        values = tuple(float(v) for v in self.values)
        object.__setattr__(self, "values", values)
        if not all(math.isfinite(v) for v in values):
            raise ValueError("threshold values must be finite")
        if not math.isfinite(self.epsilon) or self.epsilon < 0:
            raise ValueError("epsilon must be a finite non-negative number")


def threshold_relation(space: StateSpace, spec: ThresholdSpec | Sequence[float], epsilon: float | None = None) -> Relation:
    """States are indistinguishable iff their values differ by at most epsilon."""
    if not isinstance(spec, ThresholdSpec):
        spec = ThresholdSpec(tuple(spec), epsilon)
    values = spec.values
    if len(values) != space.n:
        raise LengthMismatch(space.n, len(values))
    rows = []
    for vi in values:
        row = 0
        for j, vj in enumerate(values):
            if abs(vi - vj) <= spec.epsilon:
                row |= 1 << j
        rows.append(row)
    return Relation(space, tuple(rows))


def random_relation(space: StateSpace, edge_probability: float, seed: int) -> Relation:
    """Each unordered pair, in lexicographic order, is related with the given probability.

    One ``SplitMix64(seed).random()`` draw is consumed per pair i < j.
    """
    if not 0.0 <= edge_probability <= 1.0:
        raise ValueError("edge_probability must lie in [0, 1]")
    rng = SplitMix64(seed)
    n = space.n
    rows = [1 << i for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < edge_probability:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return Relation(space, tuple(rows))

"""Line-oriented relation file format.

::

    # comment
    states: a b c
    a b
    b c

The first non-comment line declares the states; each following line names
one indistinguishable pair. Pairs are symmetric, the diagonal is implicit
and repeated pairs are harmless.
"""

from __future__ import annotations

from typing import Iterable

from .errors import InvalidStateSpace, ParseError, UnknownLabel
from .relation import Relation, StateSpace

MAX_STATES = 64


def parse_relation(text: str | Iterable[str], max_states: int | None = MAX_STATES) -> Relation:
    lines = text.splitlines() if isinstance(text, str) else text
    space = None
    rows: list[int] = []
    lineno = 0
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if space is None:
            if not line.startswith("states:"):
                raise ParseError(lineno, "expected 'states: <label> ...' header")
            labels = line[len("states:"):].split()
            if max_states is not None and len(labels) > max_states:
                raise ParseError(lineno, f"{len(labels)} states exceeds the limit of {max_states}")
            bad = [x for x in labels if x.startswith("#") or x == "states:"]
            if bad:
                raise ParseError(lineno, f"label {bad[0]!r} cannot be written in this format")
            try:
                space = StateSpace(tuple(labels))
            except InvalidStateSpace as exc:
                raise ParseError(lineno, str(exc)) from None
            rows = [1 << i for i in range(space.n)]
            continue
        tokens = line.split()
        if line.startswith("states:"):
            raise ParseError(lineno, "duplicate 'states:' header")
        if len(tokens) != 2:
            raise ParseError(lineno, f"expected '<label1> <label2>', got {line!r}")
        try:
            i, j = space.index(tokens[0]), space.index(tokens[1])
        except UnknownLabel as exc:
            raise UnknownLabel(exc.label, line=lineno) from None
        rows[i] |= 1 << j
        rows[j] |= 1 << i
    if space is None:
        raise ParseError(lineno, "missing 'states:' header")
    return Relation(space, tuple(rows))


def format_relation(rel: Relation) -> str:
    out = ["states: " + " ".join(rel.space.labels)]
    out.extend(f"{a} {b}" for a, b in rel.pairs())
    return "\n".join(out) + "\n"


def read_relation(path, max_states: int | None = MAX_STATES) -> Relation:
    with open(path, encoding="utf-8") as f:
        return parse_relation(f.read(), max_states=max_states)

"""Command-line front end.

Exit codes: 0 success, 1 internal invariant breach, 2 input or flag error,
3 domain precondition failure, 4 verification violation.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import harness
from .errors import (
    BodyOutOfBounds,
    CapExceeded,
    InvalidStateSpace,
    InvariantBreach,
    LengthMismatch,
    NotACore,
    ParseError,
    UnknownLabel,
)
from .generators import ThresholdSpec, random_relation, threshold_relation
from .relation import Relation, StateSpace, distinguishable_pair_count, is_transitive, transitivity_violations
from .rough import check_proposition1, classify_expression, make_information_set
from .textformat import MAX_STATES, format_relation, parse_relation
from .tolerance import structure_kind, tolerance_classes

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_INPUT = 2
EXIT_DOMAIN = 3
EXIT_VIOLATION = 4


class UsageError(Exception):
    pass


def _emit_json(doc) -> None:
    sys.stdout.write(json.dumps(doc, sort_keys=True, ensure_ascii=False) + "\n")


def _braces(space: StateSpace, labels) -> str:
    return "{" + ",".join(space.ordered(labels)) + "}"


def _load(args) -> Relation:
    sources = [s for s in (args.input, args.path) if s is not None]
    if len(sources) != 1:
        raise UsageError("give exactly one input file (--input FILE or a positional path)")
    src = sources[0]
    if src == "-":
        return parse_relation(sys.stdin.read())
    try:
        with open(src, encoding="utf-8") as f:
            text = f.read()
    except OSError as exc:
        raise UsageError(f"cannot read {src}: {exc.strerror}") from None
    return parse_relation(text)


def _labels_arg(raw: str) -> list[str]:
    return [x.strip() for x in raw.split(",") if x.strip()]


def cmd_classify(args) -> int:
    rel = _load(args)
    verdict = is_transitive(rel)
    count = distinguishable_pair_count(rel)
    if args.json:
        _emit_json({
            "kind": verdict.kind.value,
            "witness": list(verdict.witness) if verdict.witness else None,
            "distinguishable_pair_count": count,
            "violation_count": len(transitivity_violations(rel)),
            "states": list(rel.space.labels),
        })
        return EXIT_OK
    print(f"knowledge: {verdict.kind.value}")
    if verdict.witness:
        a, b, c = verdict.witness
        print(f"witness: {a},{b},{c} ({a} ~ {b}, {b} ~ {c}, {a} !~ {c})")
    print(f"distinguishable pairs: {count}")
    return EXIT_OK


def cmd_classes(args) -> int:
    rel = _load(args)
    classes = tolerance_classes(rel)
    kind = structure_kind(classes, rel.space)
    if args.json:
        _emit_json({
            "classes": [list(c.labels) for c in classes],
            "structure": kind.kind.value,
            "borderline": [{"state": s, "classes": list(idx)} for s, idx in kind.overlaps],
        })
        return EXIT_OK
    for k, c in enumerate(classes):
        print(f"class {k}: {{{','.join(c.labels)}}}")
    print(f"structure: {kind.kind.value}")
    if kind.overlaps:
        print("borderline: " + ", ".join(
            f"{s} (classes {','.join(map(str, idx))})" for s, idx in kind.overlaps
        ))
    else:
        print("borderline: none")
    return EXIT_OK


def cmd_boundary(args) -> int:
    rel = _load(args)
    core = _labels_arg(args.core)
    body = _labels_arg(args.body) if args.body is not None else None
    info = make_information_set(rel, core, body)
    expr = classify_expression(info)
    p1 = check_proposition1(rel, info)
    sp = rel.space
    if args.json:
        _emit_json({
            "lower": list(info.lower.labels),
            "body": list(sp.ordered(info.body)),
            "upper": list(sp.ordered(info.upper)),
            "boundary_region": list(sp.ordered(expr.boundary_region)),
            "expression": expr.kind.value,
            "proposition1": {
                "status": p1.status.value,
                "witness": list(p1.witness) if p1.witness else None,
                "detail": p1.detail,
            },
        })
    else:
        print(f"lower: {_braces(sp, info.lower.members)}")
        print(f"body: {_braces(sp, info.body)}")
        print(f"upper: {_braces(sp, info.upper)}")
        print(f"boundary region: {_braces(sp, expr.boundary_region)}")
        print(f"expression: {expr.kind.value}")
        line = f"proposition 1: {p1.status.value}"
        if p1.witness:
            line += f" (witness {p1.witness[0]},{p1.witness[1]} distinguishable)"
        elif p1.detail:
            line += f" ({p1.detail})"
        print(line)
    return EXIT_OK if p1.ok else EXIT_VIOLATION


def cmd_verify(args) -> int:
    if args.n < 1:
        raise UsageError("--n must be at least 1")
    props = (1, 2) if args.prop == "all" else (int(args.prop),)
    reports = [harness.verify_proposition(p, args.n, workers=args.workers) for p in props]
    if args.json:
        docs = [r.to_dict() for r in reports]
        _emit_json(docs[0] if len(docs) == 1 else docs)
    else:
        for r in reports:
            print(f"proposition {r.proposition}, n={r.n}: "
                  f"{r.relations_checked} relations, {r.information_sets_checked} information sets, "
                  f"{r.preconditions_unmet} preconditions unmet, {len(r.violations)} violations")
            for code, detail in r.violations:
                print(f"  violation at encoding {code}: {detail}")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_VIOLATION


def cmd_census(args) -> int:
    if args.n < 1:
        raise UsageError("--n must be at least 1")
    report = harness.census(args.n)
    bell = harness.bell_number(args.n)
    ok = report.transitive_count == bell
    if args.json:
        doc = report.to_dict()
        doc["bell_number"] = bell
        doc["bell_check"] = ok
        _emit_json(doc)
    else:
        print(f"n: {report.n}")
        print(f"total relations: {report.total_relations}")
        print(f"transitive: {report.transitive_count}")
        print(f"vague: {report.vague_count}")
        print(f"covers: {report.cover_count}")
        print(f"max boundary region: {report.max_boundary_region}")
        print(f"bell number check: {'ok' if ok else 'MISMATCH'} (B({report.n}) = {bell})")
    if not ok:
        print(f"error: transitive count {report.transitive_count} != B({args.n}) = {bell}", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def _parse_floats(raw: str) -> list[float]:
    try:
        return [float(x) for x in raw.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"--values must be comma-separated numbers, got {raw!r}") from None


def _gen_space(n: int, labels: str | None) -> StateSpace:
    if labels is None:
        if n < 1 or n > MAX_STATES:
            raise UsageError(f"state count must be between 1 and {MAX_STATES}")
        return StateSpace.numbered(n)
    space = StateSpace(tuple(_labels_arg(labels)))
    if space.n != n:
        raise UsageError(f"--labels names {space.n} states, expected {n}")
    if space.n > MAX_STATES:
        raise UsageError(f"state count must be at most {MAX_STATES}")
    return space


def cmd_generate(args) -> int:
    if args.kind == "threshold":
        values = _parse_floats(args.values)
        try:
            spec = ThresholdSpec(tuple(values), args.epsilon)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        space = _gen_space(len(values), args.labels)
        rel = threshold_relation(space, spec)
    else:
        if not 0.0 <= args.p <= 1.0:
            raise UsageError("--p must lie in [0, 1]")
        rel = random_relation(_gen_space(args.n, args.labels), args.p, args.seed)
    if args.json:
        _emit_json({"states": list(rel.space.labels), "pairs": [list(p) for p in rel.pairs()]})
    else:
        sys.stdout.write(format_relation(rel))
    return EXIT_OK


def _dot_id(label: str) -> str:
    return '"' + label.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(rel: Relation, with_classes: bool = False) -> str:
    """Undirected DOT graph: one node per state, one dotted edge per indistinguishable pair."""
    out = ["graph {", "  edge [style=dotted];"]
    labels = rel.space.labels
    if with_classes:
        classes = tolerance_classes(rel)
        kind = structure_kind(classes, rel.space)
        borderline = dict(kind.overlaps)
        for k, c in enumerate(classes):
            out.append(f"  subgraph cluster_{k} {{")
            out.append(f"    label={_dot_id(f'class {k}: ' + ','.join(c.labels))};")
            out.extend(f"    {_dot_id(s)};" for s in c.labels if s not in borderline)
            out.append("  }")
        for s, idx in kind.overlaps:
            note = "borderline: " + ",".join(map(str, idx))
            out.append(f"  {_dot_id(s)} [shape=doublecircle, xlabel={_dot_id(note)}];")
    else:
        out.extend(f"  {_dot_id(s)};" for s in labels)
    out.extend(f"  {_dot_id(a)} -- {_dot_id(b)};" for a, b in rel.pairs())
    out.append("}")
    return "\n".join(out) + "\n"


def cmd_export_dot(args) -> int:
    rel = _load(args)
    dot = to_dot(rel, args.classes)
    if args.json:
        _emit_json({"dot": dot})
    else:
        sys.stdout.write(dot)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vagueknow",
        description="Analyse indistinguishability relations: vagueness, tolerance classes, rough boundaries.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def with_input(p):
        p.add_argument("path", nargs="?", help="relation file ('-' for stdin)")
        p.add_argument("--input", "-i", metavar="FILE", help="relation file ('-' for stdin)")
        p.add_argument("--json", action="store_true", help="emit a key-sorted JSON document")
        return p

    p = with_input(sub.add_parser("classify", help="precise vs vague knowledge"))
    p.set_defaults(func=cmd_classify)

    p = with_input(sub.add_parser("classes", help="tolerance classes; partition vs cover"))
    p.set_defaults(func=cmd_classes)

    p = with_input(sub.add_parser("boundary", help="lower/upper boundary of a core"))
    p.add_argument("--core", required=True, help="comma-separated core labels")
    p.add_argument("--body", help="comma-separated body labels (default: faithful body)")
    p.set_defaults(func=cmd_boundary)

    p = sub.add_parser("verify", help="exhaustively check the propositions on n states")
    p.add_argument("--prop", choices=["1", "2", "all"], default="all")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("census", help="count transitive / vague relations on n states")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("generate", help="write a generated relation file to stdout")
    gen = p.add_subparsers(dest="kind", required=True)
    t = gen.add_parser("threshold", help="|v_i - v_j| <= epsilon")
    t.add_argument("--values", required=True, help="comma-separated numbers, one per state")
    t.add_argument("--epsilon", type=float, required=True)
    t.add_argument("--labels", help="comma-separated labels (default s0..s{n-1})")
    t.add_argument("--json", action="store_true")
    r = gen.add_parser("random", help="independent pairs with probability p")
    r.add_argument("--n", type=int, required=True)
    r.add_argument("--p", type=float, required=True)
    r.add_argument("--seed", type=int, required=True)
    r.add_argument("--labels", help="comma-separated labels (default s0..s{n-1})")
    r.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_generate)

    p = with_input(sub.add_parser("export-dot", help="DOT graph of the relation"))
    p.add_argument("--classes", action="store_true", help="cluster nodes by tolerance class")
    p.set_defaults(func=cmd_export_dot)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, UnknownLabel, InvalidStateSpace, LengthMismatch, CapExceeded, UsageError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NotACore, BodyOutOfBounds) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except InvariantBreach as exc:
        print(f"error: invariant breach: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())

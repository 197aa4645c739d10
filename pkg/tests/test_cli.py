import json
import subprocess
import sys

import pytest

from vagueknow import StateSpace, parse_relation, random_relation
from vagueknow.cli import main

SPLIT3 = "states: a b c\nb c\n"
CHAIN3 = "states: a b c\na b\nb c\n"
IDENT = "states: a b c\n"
COMPLETE = "states: a b c\na b\na c\nb c\n"
PATH4 = "states: a b c d\na b\nb c\nc d\n"


@pytest.fixture
def write(tmp_path):
    def _write(text, name="rel.txt"):
        p = tmp_path / name
        p.write_text(text, encoding="utf-8")
        return str(p)
    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_classify(capsys, write):
    code, out, _ = run(capsys, "classify", write(CHAIN3))
    assert code == 0 and "knowledge: Vague" in out and "witness: a,b,c" in out
    code, out, _ = run(capsys, "classify", "--input", write(SPLIT3))
    assert code == 0 and "knowledge: Precise" in out
    code, out, _ = run(capsys, "classify", "--json", write(CHAIN3))
    doc = json.loads(out)
    assert doc["kind"] == "Vague" and doc["witness"] == ["a", "b", "c"]
    assert doc["distinguishable_pair_count"] == 2


def test_classify_unknown_label(capsys, write):
    code, _, err = run(capsys, "classify", write("states: a b c\na b\na d\n"))
    assert code == 2 and "UnknownLabel" in err and "line 3" in err


def test_input_source_rules(capsys, write):
    path = write(CHAIN3)
    assert run(capsys, "classify", path, "--input", path)[0] == 2
    assert run(capsys, "classify")[0] == 2
    assert run(capsys, "classify", path + ".missing")[0] == 2


def test_classes(capsys, write):
    code, out, _ = run(capsys, "classes", write(CHAIN3))
    assert "class 0: {a,b}" in out and "class 1: {b,c}" in out
    assert "structure: Cover" in out and "borderline: b" in out
    _, out, _ = run(capsys, "classes", "--json", write(SPLIT3))
    assert json.loads(out) == {"borderline": [], "classes": [["a"], ["b", "c"]], "structure": "Partition"}
    _, out, _ = run(capsys, "classes", "--json", write(IDENT))
    assert json.loads(out)["classes"] == [["a"], ["b"], ["c"]]


def test_boundary(capsys, write):
    code, out, _ = run(capsys, "boundary", write(PATH4), "--core", "a,b", "--json")
    doc = json.loads(out)
    assert code == 0
    assert doc["lower"] == ["a", "b"] and doc["upper"] == ["a", "b", "c"]
    assert doc["expression"] == "VagueExpression" and doc["boundary_region"] == ["c"]
    assert doc["proposition1"] == {"detail": "", "status": "Holds", "witness": ["a", "d"]}
    code, out, err = run(capsys, "boundary", write(CHAIN3), "--core", "a")
    assert code == 3 and "NotACore" in err
    code, out, _ = run(capsys, "boundary", write(SPLIT3), "--core", "b,c")
    assert code == 0 and "PreciseExpression" in out and "boundary region: {}" in out


def test_boundary_body_errors(capsys, write):
    assert run(capsys, "boundary", write(CHAIN3), "--core", "a,b", "--body", "a,b,c,d")[0] == 3
    assert run(capsys, "boundary", write(CHAIN3), "--core", "a,z")[0] == 2
    code, out, _ = run(capsys, "boundary", write(PATH4), "--core", "a,b", "--body", "a,b")
    assert code == 0 and "body: {a,b}" in out


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--prop", "all", "--n", "4", "--json")
    docs = json.loads(out)
    assert code == 0 and [d["relations_checked"] for d in docs] == [64, 64]
    code, _, err = run(capsys, "verify", "--prop", "1", "--n", "9")
    assert code == 2 and "cap" in err
    code, out, _ = run(capsys, "verify", "--prop", "2", "--n", "1", "--json")
    assert code == 0 and json.loads(out)["relations_checked"] == 1
    assert run(capsys, "verify", "--n", "0")[0] == 2


def test_verify_bad_flag():
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--prop", "3", "--n", "2"])
    assert exc.value.code == 2


def test_census(capsys):
    code, out, _ = run(capsys, "census", "--n", "3", "--json")
    doc = json.loads(out)
    assert code == 0
    assert (doc["total_relations"], doc["transitive_count"], doc["vague_count"]) == (8, 5, 3)
    assert doc["bell_check"] is True
    code, out, _ = run(capsys, "census", "--n", "1")
    assert "total relations: 1" in out and "transitive: 1" in out
    assert run(capsys, "census", "--n", "7")[0] == 2


def test_generate(capsys, write):
    code, out, _ = run(capsys, "generate", "threshold", "--values", "0,1,2", "--epsilon", "1", "--labels", "a,b,c")
    assert code == 0 and out == CHAIN3
    code, out, _ = run(capsys, "generate", "random", "--n", "5", "--p", "0", "--seed", "7")
    assert out == "states: s0 s1 s2 s3 s4\n"
    code, out, _ = run(capsys, "generate", "threshold", "--values", "0,1,2", "--epsilon", "1")
    assert run(capsys, "classify", write(out))[0] == 0


@pytest.mark.parametrize("argv", [
    ["generate", "threshold", "--values", "0,x", "--epsilon", "1"],
    ["generate", "threshold", "--values", "0,1", "--epsilon", "-1"],
    ["generate", "threshold", "--values", "0,1", "--epsilon", "1", "--labels", "a,b,c"],
    ["generate", "random", "--n", "3", "--p", "2", "--seed", "1"],
    ["generate", "random", "--n", "65", "--p", "0.5", "--seed", "1"],
])
def test_generate_bad_params(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_generate_requires_seed():
    with pytest.raises(SystemExit) as exc:
        main(["generate", "random", "--n", "3", "--p", "0.5"])
    assert exc.value.code == 2


def test_export_dot(capsys, write):
    _, out, _ = run(capsys, "export-dot", write(CHAIN3))
    assert out.count(" -- ") == 2 and '"a" -- "b";' in out and '"b" -- "c";' in out
    assert out.startswith("graph {")
    _, out, _ = run(capsys, "export-dot", write(IDENT))
    assert out.count(" -- ") == 0 and out.count('";') == 3
    _, out, _ = run(capsys, "export-dot", write(COMPLETE))
    assert out.count(" -- ") == 3
    _, out, _ = run(capsys, "export-dot", "--classes", write(CHAIN3))
    assert "cluster_0" in out and "cluster_1" in out and "borderline: 0,1" in out


def test_round_trip_100_seeded(capsys, write):
    for seed in range(100):
        n = 1 + seed % 9
        code, out, _ = run(capsys, "generate", "random", "--n", str(n), "--p", "0.4", "--seed", str(seed))
        assert code == 0
        assert parse_relation(out) == random_relation(StateSpace.numbered(n), 0.4, seed)


def test_module_entry_point(tmp_path):
    p = tmp_path / "c.txt"
    p.write_text(CHAIN3)
    proc = subprocess.run([sys.executable, "-m", "vagueknow", "classify", str(p)], capture_output=True, text=True)
    assert proc.returncode == 0 and "Vague" in proc.stdout


def test_stdin_input(monkeypatch, capsys):
    import io
    monkeypatch.setattr(sys, "stdin", io.StringIO(CHAIN3))
    code, out, _ = run(capsys, "classes", "-")
    assert code == 0 and "Cover" in out

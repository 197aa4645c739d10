import pytest
from hypothesis import strategies as st

from vagueknow import StateSpace, from_indistinguishable_pairs, new_complete, new_identity
from vagueknow.relation import Relation

ABC = StateSpace.of("a", "b", "c")


@pytest.fixture
def abc():
    return ABC


@pytest.fixture
def complete3():
    return new_complete(ABC)


@pytest.fixture
def split3():
    return from_indistinguishable_pairs(ABC, [("b", "c")])


@pytest.fixture
def chain3():
    return from_indistinguishable_pairs(ABC, [("a", "b"), ("b", "c")])


@pytest.fixture
def identity3():
    return new_identity(ABC)


@pytest.fixture
def path4():
    space = StateSpace.of("a", "b", "c", "d")
    return from_indistinguishable_pairs(space, [("a", "b"), ("b", "c"), ("c", "d")])


@st.composite
def relations(draw, min_n=1, max_n=7):
    n = draw(st.integers(min_n, max_n))
    code = draw(st.integers(0, (1 << (n * (n - 1) // 2)) - 1))
    return Relation.from_encoding(StateSpace.numbered(n), code)


ACCEPTANCE = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line; the line reads FAIL unless the test body completes."""
    entry = {"name": request.node.name, "label": "", "ok": False, "detail": ""}
    ACCEPTANCE.append(entry)

    def mark(label, detail=""):
        entry["label"] = label
        entry["detail"] = detail
    yield mark
    entry["ok"] = request.node.rep_call.passed if hasattr(request.node, "rep_call") else False


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for e in ACCEPTANCE:
        status = "PASS" if e["ok"] else "FAIL"
        line = f"[{status}] {e['label'] or e['name']}"
        if e["detail"]:
            line += f" -- {e['detail']}"
        terminalreporter.write_line(line)

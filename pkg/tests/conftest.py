import pytest

from hindiclir.corpus import serialize_documents, serialize_qrels, serialize_topics


def write_collection(root, coll):
    """Write a SyntheticCollection as corpus/topics/qrels files under ``root``."""
    root.mkdir(parents=True, exist_ok=True)
    (root / "corpus").mkdir(exist_ok=True)
    (root / "corpus" / "docs.sgml").write_text(serialize_documents(coll.documents), encoding="utf-8")
    (root / "topics.txt").write_text(serialize_topics(coll.topics), encoding="utf-8")
    (root / "qrels.txt").write_text(serialize_qrels(coll.qrels), encoding="utf-8")
    return root


@pytest.fixture
def democracy_files(tmp_path):
    from hindiclir.synthetic import democracy_collection
    return write_collection(tmp_path / "democracy", democracy_collection())


ACCEPTANCE_LINES = []


@pytest.fixture
def criterion(request):
    """Record one acceptance criterion's outcome; printed in the terminal summary."""
    state = {"detail": ""}
    yield state
    rep = getattr(request.node, "rep_call", None)
    ok = rep is not None and rep.passed
    ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  {state.get('name', request.node.name)}: {state['detail']}")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

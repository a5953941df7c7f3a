import pytest

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line per acceptance criterion."""
    state = {}

    def record(label, detail=""):
        state["label"] = label
        state["detail"] = detail

    yield record
    rep = getattr(request.node, "rep_call", None)
    if "label" in state:
        status = "PASS" if rep is not None and rep.passed else "FAIL"
        ACCEPTANCE_LINES.append(f"[{status}] {state['label']}  {state['detail']}")


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


def pytest_addoption(parser):
    parser.addoption("--full", action="store_true", default=False,
                     help="also run the full 50 x 49 simulation grid (slow)")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--full"):
        return
    skip = pytest.mark.skip(reason="needs --full")
    for item in items:
        if "full_grid" in item.keywords:
            item.add_marker(skip)

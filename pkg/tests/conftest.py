import pytest

# (number, title, passed, detail) rows filled in by the acceptance tests
ACCEPTANCE = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line; the test body fills in ``row['detail']``."""
    number, title = request.node.get_closest_marker("criterion").args
    row = {"detail": ""}
    yield row
    passed = request.node.rep_call.passed if hasattr(request.node, "rep_call") else False
    line = f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {title}"
    if row["detail"]:
        line += f" ({row['detail']})"
    ACCEPTANCE.append((number, line))
    print(line)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(ACCEPTANCE):
            terminalreporter.write_line(line)

"""Collects one verdict line per acceptance criterion and prints them at the end."""

import pytest

ACCEPTANCE: dict[int, str] = {}


@pytest.fixture
def criterion(request):
    """Record the verdict of the acceptance criterion named by the test's ``number`` marker."""
    number = request.node.get_closest_marker("criterion").args[0]
    notes = []
    yield notes
    outcome = getattr(request.node, "rep_call", None)
    passed = outcome is not None and outcome.passed
    detail = "; ".join(notes)
    ACCEPTANCE[number] = f"[{'PASS' if passed else 'FAIL'}] criterion {number:>2}: {detail}"


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    rep = (yield).get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[number])

import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

_ACCEPTANCE = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: exit criterion, reported in the summary")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if item.get_closest_marker("acceptance") and rep.when == "call":
        doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
        _ACCEPTANCE.append((doc, rep.passed, rep.duration))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for doc, passed, duration in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  [{duration:6.2f}s]  {doc}")

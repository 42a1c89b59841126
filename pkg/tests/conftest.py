import pytest

from acceptance_results import RESULTS


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in RESULTS.lines():
        terminalreporter.write_line(line)

"""Shared fixtures: the acceptance-criterion recorder and its summary."""

import contextlib
import time

import pytest

_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in _LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def criterion():
    """Context manager that times a criterion and records one
    pass/fail line for the terminal summary."""

    @contextlib.contextmanager
    def check(number: str, label: str, limit: float):
        started = time.monotonic()
        try:
            yield
        except BaseException:
            line = f"criterion {number} FAIL: {label}"
            _LINES.append(line)
            print(line)
            raise
        elapsed = time.monotonic() - started
        if elapsed >= limit:
            line = (f"criterion {number} FAIL: {label} "
                    f"({elapsed:.2f}s, limit {limit:g}s)")
            _LINES.append(line)
            print(line)
            raise AssertionError(
                f"criterion {number} took {elapsed:.2f}s, limit {limit:g}s")
        line = (f"criterion {number} PASS: {label} "
                f"({elapsed:.2f}s < {limit:g}s)")
        _LINES.append(line)
        print(line)

    return check

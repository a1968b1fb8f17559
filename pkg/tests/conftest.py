"""Shared fixtures; the acceptance module registers one summary line per criterion."""

from __future__ import annotations

import pytest

ACCEPTANCE_LINES: dict = {}


def record_criterion(number: int, passed: bool, detail: str) -> None:
    line = f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])


@pytest.fixture(scope="session")
def sym4():
    from ekrperm.families import symmetric
    return symmetric(4)


@pytest.fixture(scope="session")
def alt5():
    from ekrperm.families import alternating
    return alternating(5)

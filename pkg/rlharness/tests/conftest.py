"""Shared fixtures for the harness test suite."""

import sys

import pytest

ACCEPTANCE_LINES: list[str] = []
"""Verdict lines collected by the acceptance tests; echoed after the run."""


@pytest.fixture
def acceptance_report():
    """Callable recording one pass/fail verdict line per criterion."""

    def report(tag: str, ok: bool, detail: str) -> bool:
        verdict = "PASS" if ok else "FAIL"
        line = f"[acceptance] {tag}: {verdict} ({detail})"
        print(line, file=sys.__stdout__, flush=True)
        ACCEPTANCE_LINES.append(line)
        return ok

    return report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance verdicts (rl harness)")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

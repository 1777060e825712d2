"""Shared test plumbing: a registry that echoes acceptance verdicts.

Acceptance tests record one line each; the hook below prints them as a
block at the end of the run so the verdicts are visible even when pytest
captures per-test output.
"""

ACCEPTANCE_RESULTS = []


def record_acceptance(line: str) -> None:
    ACCEPTANCE_RESULTS.append(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_RESULTS:
            terminalreporter.write_line(line)

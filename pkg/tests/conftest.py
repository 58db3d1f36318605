"""Shared pytest wiring: echo the acceptance-criterion verdict lines."""

CRITERION_LINES = []


def pytest_terminal_summary(terminalreporter):
    if not CRITERION_LINES:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for line in sorted(set(CRITERION_LINES)):
        terminalreporter.write_line(line)

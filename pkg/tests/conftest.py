import pytest

_LINES = pytest.StashKey[list]()


@pytest.fixture
def report_criterion(request):
    """Record a one-line PASS/FAIL verdict for an acceptance criterion."""
    lines = request.config.stash.setdefault(_LINES, [])

    def record(number, title, ok, detail=""):
        line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {title}"
        if detail:
            line += f"  ({detail})"
        lines.append((number, line))
        return ok

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_LINES, [])
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(lines):
        terminalreporter.write_line(line)

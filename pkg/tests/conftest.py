import pytest

_ACCEPTANCE: list[str] = []


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line per acceptance criterion.

    Usage: ``criterion(number, title)`` returns a reporter; call
    ``rep(ok, detail)`` once the measurement is done.
    """
    def start(number, title):
        def report(ok, detail):
            _ACCEPTANCE.append(
                f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: "
                f"{title} -- {detail}")
            return ok
        return report
    return start


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE,
                           key=lambda s: int(s.split("criterion")[1]
                                             .split(":")[0])):
            terminalreporter.write_line(line)

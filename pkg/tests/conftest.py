import pytest

ACCEPTANCE = {}


@pytest.fixture
def record():
    """Store one acceptance verdict line under its criterion number."""
    def _record(number, passed, detail):
        status = "PASS" if passed else "FAIL"
        ACCEPTANCE[number] = f"criterion {number}: {status}  {detail}"
        print(ACCEPTANCE[number])
    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])

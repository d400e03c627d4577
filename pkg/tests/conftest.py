import pytest

# (criterion number, name, passed, seconds, limit) appended by test_acceptance.py
ACCEPTANCE = []


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, name, passed, seconds, limit in sorted(ACCEPTANCE):
        verdict = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {verdict}  {name}  ({seconds * 1000:.1f} ms, limit {limit * 1000:g} ms)")

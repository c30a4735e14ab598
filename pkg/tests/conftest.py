import pytest

from carlitz_lab import CarlitzCtx, field_from_order


@pytest.fixture(scope="session")
def ctx2():
    return CarlitzCtx(field_from_order(2))


@pytest.fixture(scope="session")
def ctx3():
    return CarlitzCtx(field_from_order(3))


@pytest.fixture(scope="session")
def ctx5():
    return CarlitzCtx(field_from_order(5))


ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])

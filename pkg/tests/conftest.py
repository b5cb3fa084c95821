import pytest

from nilorbits.gf import field_make
from nilorbits.matrices import Mat

ACCEPTANCE_RESULTS: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def F2():
    return field_make("q=2")


@pytest.fixture
def F3():
    return field_make("q=3")


@pytest.fixture
def F4():
    return field_make("q=2^2")


@pytest.fixture
def F5():
    return field_make("q=5")


@pytest.fixture
def QQ():
    return field_make("rational")


def units(F):
    """E11, E12, E21, E22 over F."""
    return tuple(Mat.unit(F, i, j) for i, j in ((1, 1), (1, 2), (2, 1), (2, 2)))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS, key=lambda k: int(k.split()[1])):
        ok, detail = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {key}: {detail}")

from pathlib import Path

import pytest

from fftowers import TowerDef, make_field, parse_bivariate, parse_rational

SPECS = Path(__file__).resolve().parent.parent / "specs"


@pytest.fixture(scope="session")
def F2():
    return make_field(2, "t")


@pytest.fixture(scope="session")
def F8():
    return make_field(2, "t^3+t+1")


@pytest.fixture(scope="session")
def F9():
    return make_field(3, "t^2+1")


def rf(text, F):
    return parse_rational(text, F)


def ab_tower(F, a, b, label=""):
    return TowerDef(F, rf(a, F), rf(b, F), label=label)


@pytest.fixture(scope="session")
def L(F8):
    return TowerDef.from_bivariate(parse_bivariate("x^2*y^2 + x*y + x^2 + 1", F8), "L")


@pytest.fixture(scope="session")
def G(F9):
    return ab_tower(F9, "T^2", "T^2/(T-1)", "G")


@pytest.fixture(scope="session")
def Fk(F9):
    return ab_tower(F9, "T^2", "(T^2+1)/(2*T)", "F")


@pytest.fixture(scope="session")
def E(F9):
    return ab_tower(F9, "T^2", "(T+2)^2/(2*T)", "E")


@pytest.fixture(scope="session")
def Hdg(F8):
    return ab_tower(F8, "T^2+T", "(T^2+T+1)/T", "H")


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

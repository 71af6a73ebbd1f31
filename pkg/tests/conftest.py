import sys
from fractions import Fraction as Fr

import pytest

from heckelab.reps import Rep
from heckelab.rootsys import MetaplecticDatum, build_root_system


@pytest.fixture(scope="session")
def gl2():
    return build_root_system("GL", 2)


@pytest.fixture(scope="session")
def gl3():
    return build_root_system("GL", 3)


@pytest.fixture(scope="session")
def b2():
    return build_root_system("B", 2)


@pytest.fixture
def half():
    return Fr(1, 2)


def met_rep(rs, n, **kw):
    kw.setdefault("tmode", "equal")
    return Rep(rs, "met", datum=MetaplecticDatum(rs, n), **kw)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.lines():
        terminalreporter.write_line(line)

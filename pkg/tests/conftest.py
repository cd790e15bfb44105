from fractions import Fraction

import pytest

from corecalc import PolyFunction, Polyhedron, SetValuedMap


def halfplanes(*rows, dim=2):
    return Polyhedron.from_hrep(dim, rows)


@pytest.fixture
def square():
    return Polyhedron.box((0, 0), (1, 1))


@pytest.fixture
def absval():
    return PolyFunction(1, Polyhedron.from_hrep(2, [((1, -1), 0), ((-1, -1), 0)]))


@pytest.fixture
def above_diag():
    """F(x) = {y : y >= x}."""
    return SetValuedMap(1, 1, Polyhedron.from_hrep(2, [((1, -1), 0)]))


@pytest.fixture
def above_antidiag():
    """F(x) = {y : y >= -x}."""
    return SetValuedMap(1, 1, Polyhedron.from_hrep(2, [((-1, -1), 0)]))


@pytest.fixture
def above_abs():
    """F(x) = {y : y >= |x|}."""
    return SetValuedMap(1, 1, Polyhedron.from_hrep(2, [((1, -1), 0), ((-1, -1), 0)]))


HALF = Fraction(1, 2)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
        terminalreporter.write_line(line)

import math

import pytest

from holocurve.curves import CurveDescriptor
from holocurve.lattices import Lattice
from holocurve.numerics import cs
from holocurve.subgroups import KLEIN_FOUR

ACCEPTANCE_LINES = []

HEX_TAU = complex(0.5, math.sqrt(3) / 2)


@pytest.fixture
def square_curve():
    return CurveDescriptor.elliptic(1, cs(0, 1))


@pytest.fixture
def hex_curve():
    return CurveDescriptor.elliptic(1, HEX_TAU)


@pytest.fixture
def hex_lattice():
    return Lattice.of(1, HEX_TAU)


@pytest.fixture
def klein_gens():
    return [KLEIN_FOUR[1], KLEIN_FOUR[2]]


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)

import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from toric_cone_lab.polytope import HirzebruchParams, hirzebruch_trapezoid, unit_cube, unit_simplex  # noqa: E402


def grid_params(bmax=4, cmax=4, mmax=4):
    return [HirzebruchParams(b, c, m)
            for b in range(1, bmax + 1) for c in range(1, cmax + 1) for m in range(mmax + 1)]


@pytest.fixture
def square():
    return unit_cube(2)


@pytest.fixture
def cp2_triangle():
    return unit_simplex(2)


@pytest.fixture(scope="session")
def corpus():
    """Every integral Delzant polygon the acceptance run looks at."""
    polys = [hirzebruch_trapezoid(p) for p in grid_params()]
    return polys + [unit_cube(2), unit_simplex(2)]


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.LINES:
        terminalreporter.section("acceptance")
        for n in sorted(mod.LINES):
            terminalreporter.write_line(mod.LINES[n])

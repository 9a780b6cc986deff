import numpy as np
import pytest

# Perimeter of the ellipse x = 2 cos t, y = sin t.  Frozen from the doubling
# trapezoid oracle in test_quadrature.py::test_ellipse_oracle_value and
# cross-checked there against 8 * E(m=3/4).
ELLIPSE_2_1_PERIMETER = 9.688448220547675


def trapezoid_doubling(fn, lo, hi, tol=1e-12, n=16):
    """Plain periodic trapezoid with doubling, independent of the package engine."""
    prev = None
    while n <= 2**22:
        x = lo + (hi - lo) * np.arange(n) / n
        val = (hi - lo) * np.mean(fn(x))
        if prev is not None and abs(val - prev) <= tol:
            return val
        prev = val
        n *= 2
    raise RuntimeError("oracle did not converge")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

import cmath
import math

import pytest
from hypothesis import settings

from harmonic_zeros import Polynomial, RationalFunction

settings.register_profile("repro", derandomize=True, deadline=None)
settings.load_profile("repro")

BINARY_ZEROS = [0j, math.sqrt(1.25) + 0j, -math.sqrt(1.25) + 0j,
                1j * math.sqrt(0.75), -1j * math.sqrt(0.75)]
MONOMIAL_ZEROS = [0j, 1 + 0j, cmath.exp(2j * math.pi / 3), cmath.exp(-2j * math.pi / 3)]


def P(*coeffs):
    """Polynomial from ascending coefficients."""
    return Polynomial(list(coeffs))


def match_points(got, want, tol):
    got = sorted(got, key=lambda z: (round(z.real, 6), round(z.imag, 6)))
    want = sorted(want, key=lambda z: (round(z.real, 6), round(z.imag, 6)))
    return len(got) == len(want) and all(abs(a - b) <= tol for a, b in zip(got, want))


@pytest.fixture
def square():
    return RationalFunction(P(0, 0, 1))


@pytest.fixture
def inverse_square():
    return RationalFunction(P(1), P(0, 0, 1))


@pytest.fixture
def binary():
    return RationalFunction(P(0, 1), P(-0.25, 0, 1))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)

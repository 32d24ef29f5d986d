import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from harmonic_zeros.errors import ZeroOnCurve
from harmonic_zeros.solver import solve
from harmonic_zeros.winding import (
    Circle,
    Verdict,
    enclosing_radius,
    harmonic_function,
    large_circle_signature,
    rouche_check,
    rouche_margin,
    verify_argument_principle,
    winding_number,
)

UNIT = Circle(0j, 1.0)
R5 = Circle(0j, 5.0)


def test_minus_conjugate():
    assert winding_number(lambda z: -np.conj(z), UNIT).winding == -1


@pytest.mark.parametrize("radius", [0.1, 1.0, 30.0])
def test_cube(radius):
    assert winding_number(lambda z: z ** 3, Circle(0j, radius)).winding == 3


def test_harmonic_square(square):
    res = winding_number(harmonic_function(square), R5)
    assert res.winding == 2
    assert abs(res.raw - 2) < 0.01


@pytest.mark.parametrize("k", range(-5, 6))
def test_monomial_winding(k):
    res = winding_number(lambda z: z ** k, Circle(0j, 0.7))
    assert res.winding == k
    assert abs(res.raw - k) < 1e-9


def test_off_center_circle():
    assert winding_number(lambda z: z - 2, Circle(2 + 0.1j, 0.5)).winding == 1
    assert winding_number(lambda z: z - 2, Circle(0j, 0.5)).winding == 0


def test_zero_on_curve():
    with pytest.raises(ZeroOnCurve):
        winding_number(lambda z: z - 1, UNIT)


@settings(max_examples=30)
@given(st.integers(-4, 4), st.lists(st.floats(0.1, 10.0), min_size=3, max_size=3))
def test_positive_scaling_invariance(k, amp):
    a, b, c = amp

    def g(z):
        z = np.asarray(z)
        weight = a + b * np.abs(np.sin(np.angle(z))) + c * np.abs(z) ** 2
        return weight * z ** k

    assert winding_number(g, Circle(0j, 1.3)).winding == k


@pytest.mark.parametrize("name, expected, poles", [
    ("square", 2, 0),
    ("binary", -1, 2),
    ("inverse_square", -1, 2),
])
def test_argument_principle(name, expected, poles, request):
    r = request.getfixturevalue(name)
    zs = solve(r)
    check = verify_argument_principle(r, 0, R5, zs)
    assert check.verdict is Verdict.EQUAL
    assert check.winding == expected == check.expected
    assert check.poles_inside == poles


def test_argument_principle_skipped_near_band(square):
    zs = solve(square, -0.25)
    check = verify_argument_principle(square, -0.25, R5, zs)
    assert check.verdict is Verdict.SKIPPED


def test_rouche_inverse_square(inverse_square):
    check = rouche_check(harmonic_function(inverse_square), lambda z: -np.conj(z), R5)
    assert check.margin > 0
    assert check.hypothesis_holds and check.consistent
    assert check.winding_f == check.winding_g == -1


def test_rouche_antipodal():
    margin = rouche_margin(lambda z: z, lambda z: -z, UNIT)
    assert margin == pytest.approx(0.0, abs=1e-12)
    assert not rouche_check(lambda z: z, lambda z: -z, UNIT).hypothesis_holds


def test_rouche_square(square):
    check = rouche_check(harmonic_function(square), lambda z: z ** 2, R5)
    assert check.margin > 0
    assert check.winding_f == check.winding_g == 2


def test_enclosing_radius_contains_zeros_and_poles(binary):
    radius = enclosing_radius(binary, 0.3)
    assert np.all(np.abs(solve(binary, 0.3).locations) < radius)
    assert radius > 0.5


@pytest.mark.parametrize("n_p, n_q, want", [(1, 2, -1), (0, 3, -1), (2, 2, -1), (4, 1, 3),
                                            (3, 2, None)])
def test_large_circle_signature(n_p, n_q, want):
    assert large_circle_signature(n_p, n_q) == want

import numpy as np
import pytest

from conftest import P, match_points
from harmonic_zeros.dynamics import (
    OrbitConfig,
    build_R,
    caustic_points,
    critical_curve_sample,
    critical_points,
    eval_ratio,
    fold_normal,
    iterate_orbit,
    nonrepelling_zeros_via_orbits,
    orbit_seeds,
)
from harmonic_zeros.errors import EmptyWindow, OrbitBudgetExceeded
from harmonic_zeros.gallery import random_instance
from harmonic_zeros.poly import RationalFunction
from harmonic_zeros.solver import solve

SAMPLES = np.array([0.3 + 0.2j, -0.7 + 0.1j, 1.1 - 0.4j, 0.05j])
SQRT075 = np.sqrt(0.75)


@pytest.mark.parametrize("r, want", [
    (RationalFunction(P(0, 0, 1)), lambda z: z ** 4),
    (RationalFunction(P(1), P(0, 0, 1)), lambda z: z ** 4),
    (RationalFunction(P(0, 0, 1j)), lambda z: 1j * z ** 4),
])
def test_build_R(r, want):
    R = build_R(r)
    assert np.allclose(R(SAMPLES), want(SAMPLES), rtol=1e-12)


def test_R_is_conjugate_composition(binary):
    R = build_R(binary, 0.2 - 0.1j)
    rc = binary.shift(0.2 - 0.1j)
    w = rc(SAMPLES)
    assert np.allclose(R(SAMPLES), np.conj(rc(np.conj(w))), rtol=1e-10)


def test_critical_points_square(square):
    assert np.allclose(critical_points(square), [0])
    assert np.allclose(orbit_seeds(square)[:2], [0, 0])


def test_critical_points_binary(binary):
    crit = critical_points(binary)
    assert match_points(list(crit), [0.5j, -0.5j], 1e-12)
    assert match_points(list(orbit_seeds(binary)[2:4]), [1j, -1j], 1e-12)


def test_critical_points_inverse_square(inverse_square):
    assert np.allclose(critical_points(inverse_square), [0])
    seeds = orbit_seeds(inverse_square)
    assert np.isinf(seeds[1])


def test_orbit_contracts(square):
    out = iterate_orbit(build_R(square), 0.5)
    assert out.kind == "converged"
    assert abs(out.limit) < 1e-10


def test_orbit_escapes(square):
    assert iterate_orbit(build_R(square), 2).kind == "divergent"


def test_orbit_reaches_sense_reversing_zero(binary):
    out = iterate_orbit(build_R(binary), 1j)
    assert out.converged
    assert abs(out.limit - 1j * SQRT075) < 1e-10


@pytest.mark.parametrize("name, want", [
    ("square", [0j]),
    ("inverse_square", []),
    ("binary", [1j * SQRT075, -1j * SQRT075]),
])
def test_nonrepelling_zeros(name, want, request):
    res = nonrepelling_zeros_via_orbits(request.getfixturevalue(name))
    assert res.complete
    assert match_points(list(res.points), want, 1e-8)


def test_strict_oracle_raises_with_partial(binary):
    with pytest.raises(OrbitBudgetExceeded) as info:
        nonrepelling_zeros_via_orbits(binary, cfg=OrbitConfig(max_steps=1), strict=True)
    assert not info.value.partial.complete


@pytest.mark.parametrize("r, radius", [
    (RationalFunction(P(0, 0, 1)), 0.5),
    (RationalFunction(P(0, 0, 0, 1)), 3 ** -0.5),
    (RationalFunction(P(1), P(0, 0, 1)), 2 ** (1 / 3)),
])
def test_critical_curve_circles(r, radius):
    pts = critical_curve_sample(r, (-2, 2, -2, 2), 120)
    assert pts.size > 50
    assert np.max(np.abs(np.abs(pts) - radius)) <= 1e-8


def test_critical_curve_empty_window(square):
    with pytest.raises(EmptyWindow):
        critical_curve_sample(square, (5, 6, 5, 6), 20)


def test_caustic_points_square(square):
    assert np.allclose(caustic_points(square, [0.5, -0.5]), [-0.25, 0.75])


def test_fold_normal_is_unit(binary):
    z = critical_curve_sample(binary, (-2, 2, -2, 2), 40)[0]
    assert abs(abs(fold_normal(binary, z)) - 1) < 1e-12


def test_multiplier_matches_jacobian():
    for seed in range(10):
        spec = random_instance(2, 3, seed)
        R = build_R(spec.r)
        for z in solve(spec.r).zeros:
            want = z.r_prime_abs ** 2
            assert abs(abs(R.derivative(z.location)) - want) <= 1e-6 * max(1, want)


def test_nonrepelling_count_and_critical_count():
    for n_p, n_q in [(3, 1), (2, 4), (4, 4)]:
        for seed in range(5):
            r = random_instance(n_p, n_q, seed).r
            assert len(nonrepelling_zeros_via_orbits(r).points) <= n_p + n_q - 1
            assert len(critical_points(r)) <= n_p + n_q - 1


def test_eval_ratio_at_infinity():
    assert eval_ratio(P(1, 2), P(0, 1), [np.inf])[0] == pytest.approx(2)
    assert np.isinf(eval_ratio(P(0, 0, 1), P(1), [np.inf])[0])

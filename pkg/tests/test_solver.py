import numpy as np
import pytest

from conftest import BINARY_ZEROS, MONOMIAL_ZEROS, P, match_points
from harmonic_zeros.errors import NotAZero, OutOfScope, PoleDegenerate
from harmonic_zeros.gallery import random_instance
from harmonic_zeros.poly import RationalFunction
from harmonic_zeros.solver import Orientation, SolverConfig, classify, solve

SP, SR, SING = Orientation.SENSE_PRESERVING, Orientation.SENSE_REVERSING, Orientation.SINGULAR


def by_location(zs, z):
    return min(zs.zeros, key=lambda w: abs(w.location - z))


def test_square(square):
    zs = solve(square)
    assert match_points(list(zs.locations), MONOMIAL_ZEROS, 1e-10)
    assert (zs.n_plus, zs.n_minus, zs.n_zero) == (3, 1, 0)
    assert by_location(zs, 0).orientation is SR
    assert by_location(zs, 1).r_prime_abs == pytest.approx(2)


def test_inverse_square_rejects_spurious_points(inverse_square):
    zs = solve(inverse_square)
    assert zs.count == 1
    assert abs(zs.zeros[0].location - 1) < 1e-12
    assert zs.zeros[0].orientation is SP
    assert zs.zeros[0].r_prime_abs == pytest.approx(2)


def test_binary(binary):
    zs = solve(binary)
    assert match_points(list(zs.locations), BINARY_ZEROS, 1e-10)
    assert (zs.n_plus, zs.n_minus) == (3, 2)
    assert by_location(zs, 0).r_prime_abs == pytest.approx(4)
    assert by_location(zs, 1.118).r_prime_abs == pytest.approx(1.5)
    assert by_location(zs, 0.866j).orientation is SR


@pytest.mark.parametrize("z, orientation, modulus", [(0, SR, 0.0), (1, SP, 2.0)])
def test_classify_square(square, z, orientation, modulus):
    zero = classify(square, 0, z)
    assert zero.orientation is orientation
    assert zero.r_prime_abs == pytest.approx(modulus)


def test_classify_binary(binary):
    zero = classify(binary, 0, 1j * np.sqrt(0.75))
    assert zero.orientation is SR
    assert zero.r_prime_abs == pytest.approx(0.5)


def test_classify_rejects_non_zero(square):
    with pytest.raises(NotAZero):
        classify(square, 0, 0.5)


def test_singular_band():
    # z**2 - conj(z) - c with c on the caustic: the zero at z = 1/2 has |r'| = 1
    cfg = SolverConfig()
    zs = solve(RationalFunction(P(0, 0, 1)), -0.25, cfg)
    # a fold zero is double, so it is only located to about sqrt(eps)
    assert min(abs(z.r_prime_abs - 1) for z in zs.zeros) <= 10 * cfg.tau_sing
    assert zs.near_caustic


def test_rejects_low_degree():
    with pytest.raises(OutOfScope):
        solve(RationalFunction(P(1, 2)))


def test_shift_can_lower_degree():
    # r = (z**2 + 1)/z**2 has r_c of degree 2 for every c, but r = 1 + 1/z shifted by 1 is 1/z
    with pytest.raises(OutOfScope):
        solve(RationalFunction(P(1, 1), P(0, 1)), 1)


def test_counts_consistent_and_separated():
    cfg = SolverConfig()
    for seed in range(30):
        spec = random_instance(3, 3, seed)
        zs = solve(spec.r, 0.1j, cfg)
        assert zs.n_plus + zs.n_minus + zs.n_zero == zs.count == len(zs.locations)
        for i, a in enumerate(zs.locations):
            for b in zs.locations[i + 1:]:
                assert abs(a - b) > cfg.dedupe_rel * (1 + abs(a))
        for z in zs.zeros:
            assert z.residual <= cfg.polish_tol * (1 + abs(z.location))


def test_orientation_matches_band():
    cfg = SolverConfig()
    zs = solve(random_instance(2, 3, 11).r, 0, cfg)
    for z in zs.zeros:
        if z.r_prime_abs > 1 + cfg.tau_sing:
            assert z.orientation is SP
        elif z.r_prime_abs < 1 - cfg.tau_sing:
            assert z.orientation is SR
        else:
            assert z.orientation is SING


def test_config_override():
    cfg = SolverConfig().with_(tau_sing=1e-4, accept_tol=None)
    assert cfg.tau_sing == 1e-4 and cfg.accept_tol == SolverConfig().accept_tol


def test_pole_degenerate_is_an_error_type():
    assert issubclass(PoleDegenerate, Exception)

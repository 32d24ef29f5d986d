"""Simultaneous (Aberth-Ehrlich) polynomial root finding."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegreeZero, DidNotConverge
from .poly import Polynomial

ROOT_TOL = 1e-12
MAX_ITER = 200
_ANGLE_OFFSET = 0.7
_POLISH_STEPS = 3


@dataclass(frozen=True)
class RootSet:
    roots: np.ndarray
    residuals: np.ndarray
    converged: np.ndarray
    iterations_used: int

    @property
    def all_converged(self) -> bool:
        return bool(np.all(self.converged))

    def __len__(self):
        return len(self.roots)


def cauchy_root_bound(poly: Polynomial) -> float:
    """1 + max_k |a_k / a_n|; every root lies strictly inside this radius."""
    c = poly.coeffs
    if len(c) < 2:
        raise DegreeZero("constant polynomial has no roots")
    lower = np.abs(c[:-1] / c[-1])
    return 1.0 + float(np.max(lower))


def _horner(c, z):
    acc = np.zeros_like(z)
    for a in c[::-1]:
        acc = acc * z + a
    return acc


def _horner_abs(c, az):
    acc = np.zeros_like(az)
    for a in c[::-1]:
        acc = acc * az + a
    return acc


def _initial_guesses(c: np.ndarray) -> np.ndarray:
    n = len(c) - 1
    bound = 1.0 + float(np.max(np.abs(c[:-1] / c[-1])))
    inner = abs(c[0] / c[-1]) ** (1.0 / n)
    radius = np.sqrt(bound * inner) if inner > 0 else bound / 2
    k = np.arange(n)
    return radius * np.exp(1j * (2 * np.pi * k / n + _ANGLE_OFFSET))


def find_roots(poly: Polynomial, root_tol: float = ROOT_TOL,
               max_iter: int = MAX_ITER) -> RootSet:
    """All roots of ``poly`` by Aberth-Ehrlich iteration plus Newton polishing.

    A root counts as converged once ``|poly(z)|`` falls below ``root_tol``
    times the Horner bound ``sum |a_k| |z|**k``. Clustered roots are left as
    clusters; no deflation is attempted.

    Raises
    ------
    DegreeZero
        For constant input.
    DidNotConverge
        If some root misses the tolerance after ``max_iter`` sweeps; the
        exception carries the partial :class:`RootSet`.
    """
    c_full = poly.coeffs
    if len(c_full) < 2:
        raise DegreeZero("constant polynomial has no roots")
    # exact zero roots from vanishing low-order coefficients
    n_zero = int(np.argmax(c_full != 0))
    c = c_full[n_zero:] / c_full[-1]
    n = len(c) - 1
    zero_roots = np.zeros(n_zero, dtype=complex)
    if n == 0:
        return RootSet(zero_roots, np.zeros(n_zero), np.ones(n_zero, bool), 0)

    dc = c[1:] * np.arange(1, n + 1)
    absc = np.abs(c)
    z = _initial_guesses(c)
    done = np.zeros(n, dtype=bool)
    it = 0
    for it in range(1, max_iter + 1):
        pz = _horner(c, z)
        scale = _horner_abs(absc, np.abs(z))
        done = np.abs(pz) <= root_tol * scale
        if done.all():
            break
        act = ~done
        dpz = _horner(dc, z[act])
        dpz = np.where(dpz == 0, 1e-300, dpz)
        ratio = pz[act] / dpz
        diff = z[act, None] - z[None, :]
        idx = np.flatnonzero(act)
        diff[np.arange(len(idx)), idx] = 1.0
        inv = 1.0 / np.where(diff == 0, 1e-300, diff)
        inv[np.arange(len(idx)), idx] = 0.0
        corr = ratio / (1.0 - ratio * inv.sum(axis=1))
        corr = np.where(np.isfinite(corr), corr, ratio)
        z[act] = z[act] - corr
    else:
        pz = _horner(c, z)
        scale = _horner_abs(absc, np.abs(z))
        done = np.abs(pz) <= root_tol * scale

    # Newton polish, keeping a step only when it lowers the residual
    res = np.abs(_horner(c, z))
    for _ in range(_POLISH_STEPS):
        dpz = _horner(dc, z)
        ok = dpz != 0
        trial = z.copy()
        trial[ok] = z[ok] - _horner(c, z[ok]) / dpz[ok]
        tres = np.abs(_horner(c, trial))
        better = tres < res
        z = np.where(better, trial, z)
        res = np.where(better, tres, res)
    scale = _horner_abs(absc, np.abs(z))
    done = res <= root_tol * scale

    lead = abs(c_full[-1])
    result = RootSet(
        roots=np.concatenate([zero_roots, z]),
        residuals=np.concatenate([np.zeros(n_zero), res * lead]),
        converged=np.concatenate([np.ones(n_zero, bool), done]),
        iterations_used=it,
    )
    if not result.all_converged:
        raise DidNotConverge(
            f"{int((~done).sum())} of {n} roots unconverged after {max_iter} iterations",
            partial=result,
        )
    return result

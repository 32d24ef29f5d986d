"""Locate, polish and classify the zeros of f_c(z) = r(z) - conj(z) - c."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import NotAZero, OutOfScope, PoleDegenerate
from .poly import (
    RationalFunction,
    evaluate,
    evaluate_abs_bound,
    fixed_point_polynomial,
    shift_numerator,
)
from .roots import find_roots


class Orientation(str, enum.Enum):
    SENSE_PRESERVING = "sense-preserving"
    SENSE_REVERSING = "sense-reversing"
    SINGULAR = "singular"

    @property
    def short(self) -> str:
        return {"sense-preserving": "SP", "sense-reversing": "SR", "singular": "S"}[self.value]


@dataclass(frozen=True)
class SolverConfig:
    root_tol: float = 1e-12
    max_iter: int = 200
    accept_tol: float = 1e-6
    polish_tol: float = 1e-10
    tau_sing: float = 1e-8
    dedupe_rel: float = 1e-7
    pole_tol: float = 1e-12
    polish_steps: int = 30
    radius_factor: float = 2.0

    def with_(self, **kw) -> "SolverConfig":
        return replace(self, **{k: v for k, v in kw.items() if v is not None})


DEFAULT_CONFIG = SolverConfig()


@dataclass(frozen=True)
class Zero:
    location: complex
    r_prime_abs: float
    orientation: Orientation
    residual: float

    @property
    def is_regular(self) -> bool:
        return self.orientation is not Orientation.SINGULAR


@dataclass(frozen=True)
class ZeroSet:
    zeros: tuple
    n_plus: int
    n_minus: int
    n_zero: int
    candidates_examined: int
    instance_degrees: tuple
    near_caustic: bool = False
    c: complex = 0j
    r: RationalFunction | None = field(default=None, compare=False, repr=False)

    @property
    def count(self) -> int:
        return len(self.zeros)

    @property
    def locations(self) -> np.ndarray:
        return np.array([z.location for z in self.zeros], dtype=complex)

    @property
    def regular(self) -> bool:
        return self.n_zero == 0

    def nonrepelling(self) -> np.ndarray:
        """Locations of the zeros that are not sense-preserving."""
        return np.array([z.location for z in self.zeros
                         if z.orientation is not Orientation.SENSE_PRESERVING],
                        dtype=complex)


def orientation_of(r_prime_abs: float, tau_sing: float) -> Orientation:
    if r_prime_abs > 1 + tau_sing:
        return Orientation.SENSE_PRESERVING
    if r_prime_abs < 1 - tau_sing:
        return Orientation.SENSE_REVERSING
    return Orientation.SINGULAR


def _residual(rc: RationalFunction, z: complex) -> float:
    return abs(rc(z) - z.conjugate())


def classify(r: RationalFunction, c: complex, z: complex,
             tau_sing: float = DEFAULT_CONFIG.tau_sing,
             accept_tol: float = DEFAULT_CONFIG.accept_tol) -> Zero:
    """Zero record for a point ``z`` already known to solve f_c(z) = 0.

    The Jacobian of f_c is |r'|**2 - 1, and r_c' = r', so the orientation is
    read from |r'(z)| directly.
    """
    z = complex(z)
    rc = shift_numerator(r, c)
    res = _residual(rc, z)
    if not res <= accept_tol * (1 + abs(z)):
        raise NotAZero(f"|f_c({z})| = {res:.3g} exceeds accept_tol")
    rpa = float(abs(rc.derivative_at(z)))
    return Zero(z, rpa, orientation_of(rpa, tau_sing), res)


def newton_polish(rc: RationalFunction, z: complex, steps: int = 30,
                  tol: float = 1e-15) -> complex:
    """Refine a zero of r_c(z) - conj(z) as a real 2-D system.

    With a = r'(z) and f = f_c(z) the Newton correction solves
    a*dz - conj(dz) = -f, i.e. dz = -(conj(f) + conj(a) f) / (|a|^2 - 1).
    Close to the critical curve that system is singular and a damped
    descent on |f|^2 is used instead.
    """
    w = rc.derivative_at
    z = complex(z)
    f = rc(z) - z.conjugate()
    best = abs(f)
    for _ in range(steps):
        if best == 0 or not np.isfinite(best):
            break
        a = complex(w(z))
        det = abs(a) ** 2 - 1
        if abs(det) > 1e-8:
            dz = -(f.conjugate() + a.conjugate() * f) / det
        else:
            # gradient of |f|^2 w.r.t. conj(z) is conj(a) f - conj(f)
            grad = a.conjugate() * f - f.conjugate()
            g2 = abs(grad) ** 2
            if g2 == 0:
                break
            dz = -best ** 2 / g2 * grad
        t = 1.0
        improved = False
        for _ in range(20):
            zt = z + t * dz
            ft = rc(zt) - zt.conjugate()
            if abs(ft) < best:
                improved = True
                break
            t *= 0.5
        if not improved:
            break
        step = abs(zt - z)
        z, f, best = zt, ft, abs(ft)
        if step <= tol * (1 + abs(z)):
            break
    return z


def _dedupe(points, rel: float):
    pts = sorted(points, key=lambda z: (z.real, z.imag))
    kept: list[complex] = []
    for z in pts:
        if all(abs(z - k) > rel * (1 + abs(z)) for k in kept):
            kept.append(z)
    return kept


def solve(r: RationalFunction, c: complex = 0, cfg: SolverConfig | None = None) -> ZeroSet:
    """All zeros of f_c for one instance.

    Candidates are the roots of the fixed-point polynomial of conj(r_c) o r_c.
    A candidate survives if it is away from the poles of r and nearly
    solves f_c = 0; survivors are polished, deduplicated and classified.
    """
    cfg = cfg or DEFAULT_CONFIG
    c = complex(c)
    rc = shift_numerator(r, c)
    if rc.degree < 2:
        raise OutOfScope(f"deg(r_c) = {rc.degree} < 2")
    Q = fixed_point_polynomial(rc)
    if Q.degree < 1:
        cands = np.zeros(0, dtype=complex)
    else:
        cands = find_roots(Q, cfg.root_tol, cfg.max_iter).roots

    P, q = rc.numerator, rc.denominator
    accepted = []
    for z in cands:
        z = complex(z)
        qz = evaluate(q, z)
        qscale = evaluate_abs_bound(q, z)
        if abs(qz) <= cfg.pole_tol * qscale:
            cleared = abs(evaluate(P, z) - z.conjugate() * qz)
            if cleared <= cfg.accept_tol * (evaluate_abs_bound(P, z) + abs(z) * qscale):
                raise PoleDegenerate(f"candidate {z} is both a pole and a zero")
            continue
        if _residual(rc, z) <= cfg.accept_tol * (1 + abs(z)):
            accepted.append(newton_polish(rc, z, cfg.polish_steps))

    zeros = []
    for z in _dedupe(accepted, cfg.dedupe_rel):
        res = _residual(rc, z)
        if res > cfg.accept_tol * (1 + abs(z)):
            continue
        rpa = float(abs(rc.derivative_at(z)))
        zeros.append(Zero(z, rpa, orientation_of(rpa, cfg.tau_sing), res))

    n_plus = sum(z.orientation is Orientation.SENSE_PRESERVING for z in zeros)
    n_minus = sum(z.orientation is Orientation.SENSE_REVERSING for z in zeros)
    n_zero = len(zeros) - n_plus - n_minus
    near = any(abs(z.r_prime_abs - 1) <= 10 * cfg.tau_sing for z in zeros)
    return ZeroSet(
        zeros=tuple(zeros),
        n_plus=n_plus,
        n_minus=n_minus,
        n_zero=n_zero,
        candidates_examined=len(cands),
        instance_degrees=(rc.n_p, rc.n_q),
        near_caustic=near,
        c=c,
        r=r,
    )


"""Orbit oracle for the non-sense-preserving zeros, plus critical curve and
caustic sampling.

Every zero z0 of f_c with |r'(z0)| <= 1 is an attracting or neutral fixed
point of R = conj(r_c) o r_c, since |R'(z0)| = |r'(z0)|**2. Each such fixed
point attracts a critical point of r, so iterating R from the critical
points enumerates those zeros without touching the fixed-point polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import EmptyWindow, OrbitBudgetExceeded, OutOfScope
from .poly import (
    Polynomial,
    RationalFunction,
    conjugate_coefficients,
    conjugate_composition,
    derivative,
    shift_numerator,
    wronskian_numerator,
)
from .roots import find_roots
from .solver import DEFAULT_CONFIG, SolverConfig

#: above this degree of r the orbit uses nested evaluation of conj(r_c)(r_c(z))
NESTED_ABOVE = 6


def _value_at_infinity(num: Polynomial, den: Polynomial) -> complex:
    dn, dd = max(num.degree, 0), den.degree
    if num.is_zero or dn < dd:
        return 0j
    if dn == dd:
        return num.leading / den.leading
    return complex(np.inf)


def eval_ratio(num: Polynomial, den: Polynomial, z) -> np.ndarray:
    """num(z)/den(z) for an array, switching to reversed Horner in 1/z for
    |z| > 1; infinite input maps to the value at infinity, poles map to inf."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    out = np.empty_like(z)
    nc, dc = num.coeffs, den.coeffs
    fin = np.isfinite(z)
    small = fin & (np.abs(z) <= 1)
    big = fin & ~small
    with np.errstate(all="ignore"):
        if small.any():
            zs = z[small]
            a = np.zeros_like(zs)
            for k in nc[::-1]:
                a = a * zs + k
            b = np.zeros_like(zs)
            for k in dc[::-1]:
                b = b * zs + k
            out[small] = a / b
        if big.any():
            zb = z[big]
            w = 1.0 / zb
            a = np.zeros_like(zb)
            for k in nc:
                a = a * w + k
            b = np.zeros_like(zb)
            for k in dc:
                b = b * w + k
            shift = (len(nc) - 1) - (len(dc) - 1) if len(nc) else 0
            out[big] = a / b * zb ** shift
        out[~fin] = _value_at_infinity(num, den)
    out[~np.isfinite(out)] = complex(np.inf)
    return out


@dataclass(frozen=True)
class IteratedMap:
    """R = conj(r_c) o r_c as one rational pair (numerator, denominator)."""

    numerator: Polynomial
    denominator: Polynomial
    degree: int
    rc: RationalFunction
    nested: bool = False

    def __call__(self, z):
        scalar = np.isscalar(z)
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        if self.nested:
            rc = self.rc
            w = eval_ratio(rc.numerator, rc.denominator, z)
            out = eval_ratio(conjugate_coefficients(rc.numerator),
                             conjugate_coefficients(rc.denominator), w)
        else:
            out = eval_ratio(self.numerator, self.denominator, z)
        return complex(out[0]) if scalar else out

    @cached_property
    def _derivative_pair(self):
        a, b = self.numerator, self.denominator
        return derivative(a) * b - a * derivative(b), b * b

    @cached_property
    def _chain_parts(self):
        rc = self.rc
        pb = conjugate_coefficients(rc.numerator)
        qb = conjugate_coefficients(rc.denominator)
        w = wronskian_numerator(rc)
        wb = derivative(pb) * qb - pb * derivative(qb)
        return w, rc.denominator * rc.denominator, wb, qb * qb

    def derivative(self, z):
        """R'(z) = conj(r_c)'(r_c(z)) r_c'(z).

        At poles of r_c the chain rule breaks down and the quotient rule on
        the composed pair is used instead.
        """
        scalar = np.isscalar(z)
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        w, q2, wb, qb2 = self._chain_parts
        rc = self.rc
        with np.errstate(all="ignore"):
            inner = eval_ratio(rc.numerator, rc.denominator, z)
            out = eval_ratio(wb, qb2, inner) * eval_ratio(w, q2, z)
            bad = ~np.isfinite(out)
            if bad.any():
                num, den = self._derivative_pair
                out[bad] = eval_ratio(num, den, z[bad])
        out[~np.isfinite(out)] = complex(np.nan)
        return complex(out[0]) if scalar else out

    @property
    def infinity_attracting(self) -> bool:
        """Whether infinity is an attracting fixed point of R."""
        n_p, n_q = self.rc.n_p, self.rc.n_q
        if n_p >= n_q + 2:
            return True
        if n_p == n_q + 1:
            return abs(self.rc.numerator.leading / self.rc.denominator.leading) > 1
        return False


def build_R(r: RationalFunction, c: complex = 0) -> IteratedMap:
    rc = shift_numerator(r, c)
    if rc.degree < 2:
        raise OutOfScope(f"deg(r_c) = {rc.degree} < 2")
    top, bottom = conjugate_composition(rc)
    deg = max(top.degree, bottom.degree)
    return IteratedMap(top, bottom, int(deg), rc, nested=rc.degree > NESTED_ABOVE)


def critical_points(r: RationalFunction) -> np.ndarray:
    """Roots of the Wronskian numerator p'q - pq'.

    These are the finite critical points of r; multiple poles of r show up
    here as well, with reduced multiplicity.
    """
    w = wronskian_numerator(r)
    if w.is_zero or w.degree < 1:
        return np.zeros(0, dtype=complex)
    return find_roots(w).roots


def orbit_seeds(r: RationalFunction, c: complex = 0) -> np.ndarray:
    """Critical points z_c, their partners conj(r_c(z_c)), and R(infinity).

    Infinite partners are kept as ``inf`` so that they surface as divergent
    orbits.
    """
    rc = shift_numerator(r, c)
    crit = critical_points(rc)
    partners = np.conj(eval_ratio(rc.numerator, rc.denominator, crit)) if crit.size else crit
    R = build_R(r, c)
    at_inf = R(np.array([complex(np.inf)]))
    return np.concatenate([crit, partners, at_inf])


@dataclass(frozen=True)
class OrbitConfig:
    max_steps: int = 10_000
    step_tol: float = 1e-12
    fixed_tol: float = 1e-10
    cycle_tol: float = 1e-9
    escape_radius: float | None = None
    history: int = 64
    cesaro_window: int = 32
    cesaro_tol: float = 1e-6
    lyapunov_window: int = 512
    lyapunov_min: float = 0.05


@dataclass(frozen=True)
class OrbitOutcome:
    start: complex
    limit: complex | None
    kind: str  # converged, divergent, cyclic, repelled or unresolved
    steps: int

    @property
    def converged(self) -> bool:
        return self.kind == "converged"

    @property
    def resolved(self) -> bool:
        return self.kind != "unresolved"


def _refine_fixed_point(R: IteratedMap, z: complex, steps: int = 4) -> complex:
    best = abs(R(z) - z)
    for _ in range(steps):
        d = R.derivative(z)
        if not np.isfinite(d) or d == 1:
            break
        zt = z - (R(z) - z) / (d - 1)
        rt = abs(R(zt) - zt)
        if not rt < best:
            break
        z, best = zt, rt
    return z


def _settled(R: IteratedMap, z: complex, cfg: OrbitConfig) -> complex | None:
    """Refined fixed point near ``z`` if it is one and is not repelling."""
    lim = _refine_fixed_point(R, z)
    if abs(R(lim) - lim) > cfg.fixed_tol * (1 + abs(lim)):
        return None
    if abs(R.derivative(lim)) > 1 + 1e-6:
        return None
    return lim


def iterate_orbits(R: IteratedMap, starts, cfg: OrbitConfig | None = None):
    """Iterate R from every start simultaneously; one OrbitOutcome each.

    Besides convergence, divergence to an attracting infinity and periodic
    revisits, an orbit is classified ``"repelled"`` when the mean of
    log|R'| along it stays above ``cfg.lyapunov_min`` for two consecutive
    windows: such an orbit is not being drawn into any attracting cycle.
    """
    cfg = cfg or OrbitConfig()
    starts = np.asarray(starts, dtype=complex)
    n = len(starts)
    z = starts.copy()
    outcomes: list[OrbitOutcome | None] = [None] * n
    escape = cfg.escape_radius if cfg.escape_radius is not None else np.inf
    inf_attracts = R.infinity_attracting
    hist = np.full((cfg.history, n), np.nan + 0j)
    lyap_sum = np.zeros(n)
    strikes = np.zeros(n, dtype=int)
    active = np.isfinite(starts)
    for i in np.flatnonzero(~active):
        outcomes[i] = OrbitOutcome(complex(starts[i]), None, "divergent", 0)

    def finish(k, limit, kind, step):
        outcomes[k] = OrbitOutcome(complex(starts[k]), limit, kind, step)
        active[k] = False

    step_no = 0
    for step_no in range(1, cfg.max_steps + 1):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        zi = z[idx]
        zn = R(zi)
        with np.errstate(all="ignore"):
            moved = np.abs(zn - zi)
            lyap_sum[idx] += np.log(np.maximum(np.abs(R.derivative(zi)), 1e-300))
        fin = np.isfinite(zn)
        if inf_attracts:
            for j in np.flatnonzero(~fin | (np.abs(zn) > escape)):
                finish(idx[j], None, "divergent", step_no)
        for j in np.flatnonzero(fin & (moved <= cfg.fixed_tol * (1 + np.abs(zi)))):
            if active[idx[j]]:
                lim = _settled(R, complex(zn[j]), cfg)
                if lim is not None:
                    finish(idx[j], lim, "converged", step_no)
        z[idx] = zn
        hist[step_no % cfg.history, idx] = zn
        if step_no % 16 == 0 and step_no >= cfg.history:
            for k in np.flatnonzero(active):
                cur = z[k]
                close = np.abs(hist[:, k] - cur) <= cfg.cycle_tol * (1 + abs(cur))
                # the current slot always matches itself; a second match is a revisit
                if close.sum() >= 2:
                    lim = _settled(R, cur, cfg)
                    finish(k, lim, "converged" if lim is not None else "cyclic", step_no)
        if step_no % cfg.lyapunov_window == 0:
            act = np.flatnonzero(active)
            mean = lyap_sum[act] / cfg.lyapunov_window
            strikes[act] = np.where(mean > cfg.lyapunov_min, strikes[act] + 1, 0)
            lyap_sum[act] = 0.0
            for k in act[strikes[act] >= 2]:
                finish(k, None, "repelled", step_no)

    for k in np.flatnonzero(active):
        # slow (neutral) convergence: the running mean settles on the fixed point
        window = hist[:, k][np.isfinite(hist[:, k])][-cfg.cesaro_window:]
        mean = complex(np.mean(window)) if window.size else complex(z[k])
        if np.isfinite(mean) and abs(R(mean) - mean) <= cfg.cesaro_tol * (1 + abs(mean)):
            finish(k, _refine_fixed_point(R, mean), "converged", step_no)
        else:
            finish(k, None, "unresolved", step_no)
    return outcomes


def iterate_orbit(R: IteratedMap, start: complex, max_steps: int = 10_000,
                  fixed_tol: float = 1e-10, escape_radius: float | None = None) -> OrbitOutcome:
    cfg = OrbitConfig(max_steps=max_steps, fixed_tol=fixed_tol, escape_radius=escape_radius)
    return iterate_orbits(R, [start], cfg)[0]


@dataclass(frozen=True)
class OrbitOracleResult:
    points: np.ndarray
    outcomes: tuple
    complete: bool


def _sorted_dedupe(points, rel):
    pts = sorted(points, key=lambda w: (w.real, w.imag))
    kept: list[complex] = []
    for w in pts:
        if all(abs(w - k) > rel * (1 + abs(w)) for k in kept):
            kept.append(w)
    return np.array(kept, dtype=complex)


def nonrepelling_zeros_via_orbits(r: RationalFunction, c: complex = 0,
                                  cfg: OrbitConfig | None = None,
                                  solver_cfg: SolverConfig | None = None,
                                  strict: bool = False) -> OrbitOracleResult:
    """Zeros of f_c with |r'| <= 1, found as limits of critical orbits of R.

    Limits that are fixed points of R but not zeros of f_c are discarded, as
    are sense-preserving limits. With ``strict`` an unresolved orbit raises
    :class:`OrbitBudgetExceeded` carrying the partial result.
    """
    scfg = solver_cfg or DEFAULT_CONFIG
    cfg = cfg or OrbitConfig()
    R = build_R(r, c)
    rc = R.rc
    seeds = orbit_seeds(r, c)
    outcomes = iterate_orbits(R, seeds, cfg)
    found = []
    for o in outcomes:
        if not o.converged:
            continue
        z0 = o.limit
        w = complex(eval_ratio(rc.numerator, rc.denominator, [z0])[0])
        if not abs(w - z0.conjugate()) <= scfg.accept_tol * (1 + abs(z0)):
            continue
        if abs(rc.derivative_at(z0)) > 1 + scfg.tau_sing:
            continue
        found.append(z0)
    result = OrbitOracleResult(_sorted_dedupe(found, 1e-7), tuple(outcomes),
                               all(o.resolved for o in outcomes))
    if strict and not result.complete:
        raise OrbitBudgetExceeded("some critical orbits did not resolve", partial=result)
    return result


def critical_curve_sample(r: RationalFunction, window, grid_n: int,
                          tol: float = 1e-10) -> np.ndarray:
    """Points of the critical curve |r'(z)| = 1 inside ``window``.

    ``window`` is ``(xmin, xmax, ymin, ymax)``. The level set of |r'| - 1 is
    located on every grid edge with a sign change (the marching-squares
    vertices) and refined by bisection along that edge.
    """
    if grid_n < 2:
        raise ValueError("grid_n must be at least 2")
    xmin, xmax, ymin, ymax = window
    xs = np.linspace(xmin, xmax, grid_n)
    ys = np.linspace(ymin, ymax, grid_n)
    Z = xs[None, :] + 1j * ys[:, None]
    wr = wronskian_numerator(r)

    def level(z):
        with np.errstate(all="ignore"):
            v = np.abs(eval_ratio(wr, r.denominator * r.denominator, z)) - 1.0
        return np.where(np.isfinite(v), v, np.inf)

    F = level(Z.ravel()).reshape(Z.shape)
    a_list, b_list = [], []
    for A, B, FA, FB in (
        (Z[:, :-1], Z[:, 1:], F[:, :-1], F[:, 1:]),
        (Z[:-1, :], Z[1:, :], F[:-1, :], F[1:, :]),
    ):
        mask = np.isfinite(FA) & np.isfinite(FB) & ((FA > 0) != (FB > 0))
        a_list.append(A[mask])
        b_list.append(B[mask])
    a = np.concatenate(a_list)
    b = np.concatenate(b_list)
    if a.size == 0:
        raise EmptyWindow("no sign change of |r'| - 1 in the window")
    fa = level(a)
    for _ in range(200):
        m = 0.5 * (a + b)
        fm = level(m)
        same = (fm > 0) == (fa > 0)
        a = np.where(same, m, a)
        fa = np.where(same, fm, fa)
        b = np.where(same, b, m)
        if np.all(np.abs(b - a) <= 1e-16 * (1 + np.abs(a))):
            break
    fb = level(b)
    pts = np.where(np.abs(fa) <= np.abs(fb), a, b)
    err = np.minimum(np.abs(fa), np.abs(fb))
    pts = pts[err <= tol]
    if pts.size == 0:
        raise EmptyWindow("critical curve could not be refined in the window")
    return pts


def caustic_points(r: RationalFunction, curve) -> np.ndarray:
    """Images f(z) = r(z) - conj(z) of critical-curve points: the shifts c
    at which f_c has a singular zero."""
    curve = np.asarray(curve, dtype=complex)
    return r(curve) - np.conj(curve)


def fold_normal(r: RationalFunction, z: complex) -> complex:
    """Unit normal to the caustic at f(z) for a critical point z.

    With r'(z) = exp(i phi) the differential dz -> r' dz - conj(dz) has
    range i exp(i phi / 2) R, which contains the caustic tangent; the
    normal is therefore exp(i phi / 2).
    """
    phi = np.angle(r.derivative_at(complex(z)))
    return complex(np.exp(0.5j * phi))

"""Winding numbers on circles and numerical checks of the argument principle
and of Rouche's theorem for harmonic functions."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import NonIntegerWinding, SampleBudgetExceeded, ZeroOnCurve
from .poly import RationalFunction, fixed_point_polynomial, shift_numerator
from .roots import cauchy_root_bound, find_roots
from .solver import DEFAULT_CONFIG, Orientation, SolverConfig, ZeroSet


@dataclass(frozen=True)
class Circle:
    center: complex
    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("circle radius must be positive")

    def point(self, t):
        return self.center + self.radius * np.exp(1j * np.asarray(t, dtype=float))

    def contains(self, z) -> bool:
        return abs(z - self.center) < self.radius


@dataclass(frozen=True)
class WindingConfig:
    initial_samples: int = 64
    max_samples: int = 1 << 20
    max_phase_step: float = np.pi / 2
    near_zero_rel: float = 1e-9
    integrality_tol: float = 0.01


@dataclass(frozen=True)
class WindingResult:
    winding: int
    samples_used: int
    min_modulus_on_curve: float
    raw: float


def _evaluator(g):
    def ev(z):
        try:
            out = np.asarray(g(z), dtype=complex)
            if out.shape == np.shape(z):
                return out
        except TypeError:
            pass
        return np.array([complex(g(w)) for w in np.ravel(z)], dtype=complex)
    return ev


def _adaptive_samples(g, circle: Circle, cfg: WindingConfig):
    """Parameters and values on the circle such that no consecutive phase step
    reaches ``cfg.max_phase_step``."""
    ev = _evaluator(g)
    t = np.linspace(0.0, 2 * np.pi, cfg.initial_samples, endpoint=False)
    vals = ev(circle.point(t))
    if not np.all(np.isfinite(vals)):
        raise ZeroOnCurve("g is not finite on the curve")
    typical = float(np.median(np.abs(vals)))
    floor = cfg.near_zero_rel * typical
    while True:
        mod = np.abs(vals)
        if not np.all(np.isfinite(vals)):
            raise ZeroOnCurve("g is not finite on the curve")
        if mod.min() <= floor:
            k = int(np.argmin(mod))
            raise ZeroOnCurve(f"|g| = {mod[k]:.3g} at {circle.point(t[k])}")
        nxt = np.roll(vals, -1)
        step = np.angle(nxt / vals)
        bad = np.flatnonzero(np.abs(step) >= cfg.max_phase_step)
        if bad.size == 0:
            return t, vals, step, floor
        if len(t) + bad.size > cfg.max_samples:
            raise SampleBudgetExceeded(f"more than {cfg.max_samples} samples needed")
        t_next = np.append(t[1:], 2 * np.pi)
        mids = 0.5 * (t[bad] + t_next[bad])
        new_vals = ev(circle.point(mids))
        t = np.concatenate([t, mids])
        vals = np.concatenate([vals, new_vals])
        order = np.argsort(t, kind="stable")
        t, vals = t[order], vals[order]


def winding_number(g, circle: Circle, cfg: WindingConfig | None = None) -> WindingResult:
    """Change of arg g along the positively oriented circle, divided by 2 pi.

    ``g`` should accept an array of points; a scalar callable also works but
    is evaluated pointwise.
    """
    cfg = cfg or WindingConfig()
    t, vals, step, _ = _adaptive_samples(g, circle, cfg)
    raw = float(step.sum() / (2 * np.pi))
    w = int(round(raw))
    if abs(raw - w) >= cfg.integrality_tol:
        raise NonIntegerWinding(f"unwrapped total {raw:.6f} is not an integer")
    return WindingResult(w, len(t), float(np.abs(vals).min()), raw)


def harmonic_function(r: RationalFunction, c: complex = 0):
    """Vectorized f_c(z) = r(z) - c - conj(z)."""
    rc = shift_numerator(r, c)

    def f(z):
        return rc(z) - np.conj(z)
    return f


class Verdict(str, enum.Enum):
    EQUAL = "equal"
    UNEQUAL = "unequal"
    SKIPPED = "skipped"


@dataclass(frozen=True)
class ArgumentPrincipleCheck:
    verdict: Verdict
    winding: int | None
    n_plus_inside: int
    n_minus_inside: int
    poles_inside: int

    @property
    def expected(self) -> int:
        return self.n_plus_inside - self.n_minus_inside - self.poles_inside


def poles_inside(r: RationalFunction, circle: Circle) -> int:
    """Roots of the denominator inside the circle, counted with multiplicity."""
    q = r.denominator
    if q.degree < 1:
        return 0
    roots = find_roots(q).roots
    dist = np.abs(roots - circle.center)
    if np.any(np.abs(dist - circle.radius) <= 1e-9 * circle.radius):
        raise ZeroOnCurve("a pole of r lies on the curve")
    return int(np.sum(dist < circle.radius))


def verify_argument_principle(r: RationalFunction, c: complex, circle: Circle,
                              zeroset: ZeroSet, tau_sing: float = DEFAULT_CONFIG.tau_sing,
                              cfg: WindingConfig | None = None) -> ArgumentPrincipleCheck:
    """Compare V(f_c; circle) with N+ - N- - P inside the circle.

    The comparison is skipped when a zero inside is singular or lies within
    ten times ``tau_sing`` of the singular band, since the identity needs a
    regular interior.
    """
    inside = [z for z in zeroset.zeros if circle.contains(z.location)]
    n_plus = sum(z.orientation is Orientation.SENSE_PRESERVING for z in inside)
    n_minus = sum(z.orientation is Orientation.SENSE_REVERSING for z in inside)
    n_pole = poles_inside(r, circle)
    if any(abs(z.r_prime_abs - 1) <= 10 * tau_sing for z in inside):
        return ArgumentPrincipleCheck(Verdict.SKIPPED, None, n_plus, n_minus, n_pole)
    wr = winding_number(harmonic_function(r, c), circle, cfg)
    verdict = Verdict.EQUAL if wr.winding == n_plus - n_minus - n_pole else Verdict.UNEQUAL
    return ArgumentPrincipleCheck(verdict, wr.winding, n_plus, n_minus, n_pole)


@dataclass(frozen=True)
class RoucheCheck:
    margin: float
    winding_f: int | None
    winding_g: int | None

    @property
    def hypothesis_holds(self) -> bool:
        return self.margin > 0

    @property
    def consistent(self) -> bool:
        """False only when the hypothesis holds and the windings differ."""
        return not self.hypothesis_holds or self.winding_f == self.winding_g


def _margin_on(f, g, t, circle):
    z = circle.point(t)
    fv, gv = f(z), g(z)
    return float(np.min(np.abs(fv) + np.abs(gv) - np.abs(fv - gv)))


def rouche_margin(f, g, circle: Circle, cfg: WindingConfig | None = None,
                  dense: int = 4096) -> float:
    """min over the curve of |f| + |g| - |f - g|.

    The minimum is taken over a uniform grid of ``dense`` points merged with
    the adaptive nodes of both winding computations. A positive value means
    the Rouche hypothesis holds on every sample.
    """
    cfg = cfg or WindingConfig()
    fe, ge = _evaluator(f), _evaluator(g)
    t = np.linspace(0.0, 2 * np.pi, dense, endpoint=False)
    for h in (fe, ge):
        try:
            t = np.union1d(t, _adaptive_samples(h, circle, cfg)[0])
        except ZeroOnCurve:
            pass
    return _margin_on(fe, ge, t, circle)


def rouche_check(f, g, circle: Circle, cfg: WindingConfig | None = None) -> RoucheCheck:
    """Margin plus both windings (windings are ``None`` if undefined)."""
    margin = rouche_margin(f, g, circle, cfg)
    ws = []
    for h in (f, g):
        try:
            ws.append(winding_number(h, circle, cfg).winding)
        except ZeroOnCurve:
            ws.append(None)
    return RoucheCheck(margin, ws[0], ws[1])


def enclosing_radius(r: RationalFunction, c: complex = 0,
                     factor: float = DEFAULT_CONFIG.radius_factor) -> float:
    """Radius M of an origin circle enclosing every zero and pole of f_c.

    M = factor * (1 + max(Cauchy bound of the fixed-point polynomial,
    Cauchy bound of q)).
    """
    rc = shift_numerator(r, c)
    b1 = cauchy_root_bound(fixed_point_polynomial(rc))
    b2 = cauchy_root_bound(rc.denominator) if rc.n_q >= 1 else 0.0
    return factor * (1 + max(b1, b2))


def large_circle_signature(n_p: int, n_q: int) -> int | None:
    """V(f_c; dB_M(0)) for M beyond every zero and pole, or ``None`` when
    the degrees fall in the n_p = n_q + 1 case."""
    if n_p <= n_q:
        return -1
    if n_p > n_q + 1:
        return n_p - n_q
    return None

"""Named instances: closed-form witnesses, lens models and seeded random draws."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

from .errors import DuplicatePosition, HarmonicZerosError, NotCoprime, OutOfScope
from .poly import Polynomial, RationalFunction, gcd_degree

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """SplitMix64 stream (Steele, Lea & Flood constants)."""

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def uniform(self) -> float:
        """Double in [0, 1) from the top 53 bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def unit_disk(self) -> complex:
        rad = math.sqrt(self.uniform())
        ang = 2 * math.pi * self.uniform()
        return complex(rad * math.cos(ang), rad * math.sin(ang))


@dataclass(frozen=True)
class InstanceSpec:
    name: str
    r: RationalFunction
    c: complex = 0j
    expected_count: int | None = None
    provenance: str = "derived"


def _validate(spec: InstanceSpec) -> InstanceSpec:
    rc = spec.r.shift(spec.c)
    if rc.degree < 2:
        raise OutOfScope(f"{spec.name}: deg(r_c) = {rc.degree} < 2")
    return spec


def monomial_harmonic(n: int) -> InstanceSpec:
    """z**n - conj(z); the count 3n - 2 is known in closed form for n = 2."""
    if n < 2:
        raise OutOfScope("monomial_harmonic needs n >= 2")
    r = RationalFunction(Polynomial.monomial(n))
    return InstanceSpec(
        f"monomial{n}", r, 0j,
        expected_count=4 if n == 2 else None,
        provenance="harmonic polynomial (Khavinson-Swiatek bound 3n-2)",
    )


def point_mass_sum(masses, positions, name: str = "point_mass") -> InstanceSpec:
    """r(z) = sum_j m_j / (z - z_j) over a common denominator."""
    masses = [float(m) for m in masses]
    positions = [complex(z) for z in positions]
    if len(masses) != len(positions):
        raise ValueError("masses and positions differ in length")
    if len(masses) < 2:
        raise OutOfScope("need at least two point masses")
    if any(m <= 0 for m in masses):
        raise ValueError("masses must be positive")
    for i, a in enumerate(positions):
        for b in positions[i + 1:]:
            if abs(a - b) <= 1e-12 * (1 + abs(a)):
                raise DuplicatePosition(f"positions {a} and {b} coincide")
    q = Polynomial.from_roots(positions)
    p = Polynomial()
    for j, m in enumerate(masses):
        others = positions[:j] + positions[j + 1:]
        p = p + m * Polynomial.from_roots(others)
    r = RationalFunction(p, q)
    return _validate(InstanceSpec(name, r, 0j, provenance="point-mass lens"))


def mpw(n: int, a: float = 0.5) -> InstanceSpec:
    """Equal masses 1/n on the regular n-gon of radius ``a``.

    For n = 2 this is the equal-mass binary z / (z**2 - a**2), which has
    exactly five zeros {0, +-sqrt(1 + a**2), +-i sqrt(1 - a**2)} when 0 < a < 1.
    """
    if n < 2:
        raise OutOfScope("mpw needs n >= 2")
    if a <= 0:
        raise ValueError("a must be positive")
    pos = [a * np.exp(2j * np.pi * k / n) for k in range(n)]
    if n == 2:
        pos = [a, -a]
    spec = point_mass_sum([1.0 / n] * n, pos, name=f"mpw{n}")
    expected = 5 if (n == 2 and a < 1) else None
    return InstanceSpec(spec.name, spec.r, 0j, expected, "Mao-Petters-Witt polygon lens")


def rhie(n: int, epsilon: float, a: float) -> InstanceSpec:
    """Polygon lens with a small central mass.

    r(z) = (1 - eps) z**(n-1) / (z**n - a**n) + eps / z
         = (z**n - eps a**n) / (z**(n+1) - a**n z),
    a rational function of type (n, n + 1).
    """
    if n < 2:
        raise OutOfScope("rhie needs n >= 2")
    if not 0 <= epsilon < 1:
        raise ValueError("epsilon must lie in [0, 1)")
    if a <= 0:
        raise ValueError("a must be positive")
    an = a ** n
    if epsilon == 0:
        p = Polynomial.monomial(n - 1)
        q = Polynomial.monomial(n) - an
    else:
        p = Polynomial.monomial(n) - epsilon * an
        q = Polynomial.monomial(n + 1) - an * Polynomial.monomial(1)
    r = RationalFunction(p, q)
    return _validate(InstanceSpec(f"rhie{n}", r, 0j, None, "Rhie point-lens construction"))


#: (epsilon, a) per polygon size, taken from the interior of the region where a
#: grid sweep over epsilon in [0.001, 0.1] and a in [0.5, 1.5] gives the maximal
#: count.  n = 2 (three collinear masses) never exceeds 8 zeros, so it has no entry.
RHIE_PARAMETERS: dict[int, tuple[float, float]] = {3: (0.002, 0.6), 4: (0.005, 0.6)}


def rhie_equal_degree(n: int, alpha: complex = 1e-3, epsilon: float | None = None,
                      a: float | None = None) -> InstanceSpec:
    """``rhie(n) + alpha``, of type (n + 1, n + 1).

    Its zeros are those of the Rhie function shifted by ``-alpha``, so a small
    alpha keeps every zero while raising the numerator degree.
    """
    eps0, a0 = RHIE_PARAMETERS.get(n, (0.01, 1.0))
    base = rhie(n, eps0 if epsilon is None else epsilon, a0 if a is None else a)
    r = RationalFunction(base.r.numerator + alpha * base.r.denominator, base.r.denominator)
    return _validate(InstanceSpec(f"rhieq{n}", r, 0j, None, "shifted Rhie point lens"))


def random_instance(n_p: int, n_q: int, seed: int, max_attempts: int = 100) -> InstanceSpec:
    """Seeded random r = p/q with exact degrees (n_p, n_q) and monic q.

    Coefficients are drawn uniformly from the complex unit disk with
    :class:`SplitMix64`; draws are repeated until the leading coefficient of
    p is not tiny and the pair passes the coprimality gate.
    """
    if max(n_p, n_q) < 2 or min(n_p, n_q) < 0:
        raise OutOfScope(f"degrees ({n_p}, {n_q}) out of scope")
    gen = SplitMix64(seed)
    for _ in range(max_attempts):
        pc = [gen.unit_disk() for _ in range(n_p + 1)]
        qc = [gen.unit_disk() for _ in range(n_q)] + [1.0]
        if abs(pc[-1]) < 0.05:
            continue
        p, q = Polynomial(pc), Polynomial(qc)
        if gcd_degree(p, q) != 0:
            continue
        try:
            r = RationalFunction(p, q)
        except NotCoprime:
            continue
        return InstanceSpec(f"random({n_p},{n_q},{seed})", r, 0j, None, "random")
    raise HarmonicZerosError(
        f"no valid ({n_p}, {n_q}) instance after {max_attempts} draws (seed {seed})")


_NAME = re.compile(r"^(monomial|mpw|rhieq|rhie)(\d+)$")


def by_name(name: str, **params) -> InstanceSpec:
    """Resolve a catalog name such as ``monomial2``, ``mpw2`` or ``rhie3``.

    ``random:NP,NQ,SEED`` yields :func:`random_instance`. Extra keyword
    parameters (``a``, ``epsilon``) feed the lens constructors.
    """
    if name.startswith("random:"):
        n_p, n_q, seed = (int(t) for t in name[len("random:"):].split(","))
        return random_instance(n_p, n_q, seed)
    m = _NAME.match(name)
    if not m:
        raise KeyError(f"unknown gallery instance {name!r}")
    kind, n = m.group(1), int(m.group(2))
    if kind == "monomial":
        return monomial_harmonic(n)
    if kind == "mpw":
        return mpw(n, params.get("a") or 0.5)
    if kind == "rhieq":
        return rhie_equal_degree(n, params.get("alpha") or 1e-3, params.get("epsilon"),
                                 params.get("a"))
    eps_default, a_default = RHIE_PARAMETERS.get(n, (0.01, 1.0))
    eps = params.get("epsilon")
    return rhie(n, eps_default if eps is None else eps, params.get("a") or a_default)


CATALOG = ("monomial2", "monomial3", "mpw2", "mpw3", "rhie3", "rhie4", "rhieq3")

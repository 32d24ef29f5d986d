"""Dense complex polynomials and rational functions.

Coefficients are stored in ascending order, ``coeffs[k]`` multiplies ``z**k``.
Every object here is immutable; operations return new instances.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import BothZero, DegenerateComposition, NotCoprime, OutOfScope

NEG_INF = -math.inf

#: relative threshold below which a leading coefficient counts as cancelled
TRIM_REL = 1e-12
#: relative remainder threshold of the approximate Euclid gate
COPRIME_TOL = 1e-9


def _as_coeffs(coeffs) -> np.ndarray:
    arr = np.array(coeffs, dtype=complex).ravel()
    nz = np.flatnonzero(arr)
    if nz.size == 0:
        return np.zeros(0, dtype=complex)
    return arr[: nz[-1] + 1]


def _trim_rel(arr: np.ndarray, scale: float, rel: float = TRIM_REL) -> np.ndarray:
    if arr.size == 0:
        return arr
    thresh = rel * scale
    keep = np.flatnonzero(np.abs(arr) > thresh)
    if keep.size == 0:
        return np.zeros(0, dtype=complex)
    return arr[: keep[-1] + 1]


def _max_abs(arr: np.ndarray) -> float:
    return float(np.max(np.abs(arr))) if arr.size else 0.0


class Polynomial:
    """Complex polynomial in canonical trimmed form.

    The zero polynomial has an empty coefficient array and degree ``-inf``.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs=()):
        if isinstance(coeffs, Polynomial):
            c = coeffs._c
        else:
            c = _as_coeffs(coeffs)
            c.setflags(write=False)
        self._c = c

    @classmethod
    def _raw(cls, arr: np.ndarray) -> "Polynomial":
        obj = cls.__new__(cls)
        arr = np.ascontiguousarray(arr, dtype=complex)
        arr.setflags(write=False)
        obj._c = arr
        return obj

    @classmethod
    def monomial(cls, k: int, coeff: complex = 1.0) -> "Polynomial":
        c = np.zeros(k + 1, dtype=complex)
        c[k] = coeff
        return cls(c)

    @classmethod
    def from_roots(cls, roots, lead: complex = 1.0) -> "Polynomial":
        c = np.array([lead], dtype=complex)
        for w in roots:
            c = np.convolve(c, np.array([-w, 1.0], dtype=complex))
        return cls(c)

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    @property
    def degree(self):
        return len(self._c) - 1 if len(self._c) else NEG_INF

    @property
    def is_zero(self) -> bool:
        return len(self._c) == 0

    @property
    def leading(self) -> complex:
        return complex(self._c[-1]) if len(self._c) else 0j

    def max_abs(self) -> float:
        return _max_abs(self._c)

    def __call__(self, z):
        return evaluate(self, z)

    def __len__(self):
        return len(self._c)

    def __neg__(self):
        return Polynomial._raw(-self._c)

    def _combine(self, other, sign):
        if not isinstance(other, Polynomial):
            other = Polynomial([other])
        a, b = self._c, other._c
        m = max(len(a), len(b))
        out = np.zeros(m, dtype=complex)
        out[: len(a)] += a
        out[: len(b)] += sign * b
        scale = max(_max_abs(a), _max_abs(b))
        return Polynomial._raw(_trim_rel(out, scale))

    def __add__(self, other):
        return self._combine(other, 1.0)

    __radd__ = __add__

    def __sub__(self, other):
        return self._combine(other, -1.0)

    def __rsub__(self, other):
        return (-self)._combine(other, 1.0)

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            if self.is_zero or other.is_zero:
                return Polynomial()
            return Polynomial._raw(np.convolve(self._c, other._c))
        if other == 0:
            return Polynomial()
        return Polynomial._raw(self._c * complex(other))

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return Polynomial._raw(self._c / complex(scalar))

    def __pow__(self, k: int):
        out = Polynomial([1.0])
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return len(self._c) == len(other._c) and bool(np.all(self._c == other._c))

    def __hash__(self):
        return hash(self._c.tobytes())

    def allclose(self, other: "Polynomial", rtol=1e-12, atol=1e-12) -> bool:
        if len(self._c) != len(other._c):
            return False
        return bool(np.allclose(self._c, other._c, rtol=rtol, atol=atol))

    def trim(self, rel: float = TRIM_REL) -> "Polynomial":
        return Polynomial._raw(_trim_rel(self._c, self.max_abs(), rel))

    def conj(self) -> "Polynomial":
        return conjugate_coefficients(self)

    def deriv(self) -> "Polynomial":
        return derivative(self)

    def __repr__(self):
        if self.is_zero:
            return "Polynomial([])"
        body = ", ".join(_fmt_complex(a) for a in self._c)
        return f"Polynomial([{body}])"


def _fmt_complex(a: complex) -> str:
    a = complex(a)
    if a.imag == 0:
        return repr(a.real)
    return repr(a)


def evaluate(poly: Polynomial, z):
    """Horner evaluation; accepts a scalar or an array of points."""
    c = poly.coeffs
    if np.isscalar(z):
        acc = 0j
        for a in c[::-1]:
            acc = acc * z + a
        return complex(acc)
    z = np.asarray(z, dtype=complex)
    acc = np.zeros_like(z)
    for a in c[::-1]:
        acc = acc * z + a
    return acc


def evaluate_abs_bound(poly: Polynomial, z):
    """Horner run on |coefficients| at |z|; the natural residual scale."""
    c = np.abs(poly.coeffs)
    az = np.abs(z)
    acc = np.zeros_like(az, dtype=float) if not np.isscalar(az) else 0.0
    for a in c[::-1]:
        acc = acc * az + a
    return acc


def derivative(poly: Polynomial) -> Polynomial:
    c = poly.coeffs
    if len(c) <= 1:
        return Polynomial()
    return Polynomial(c[1:] * np.arange(1, len(c)))


def conjugate_coefficients(poly: Polynomial) -> Polynomial:
    return Polynomial._raw(np.conj(poly.coeffs))


def _divmod_arrays(num: np.ndarray, den: np.ndarray):
    """Long division of ascending coefficient arrays."""
    num = num.copy()
    dn = len(den) - 1
    if len(num) - 1 < dn:
        return np.zeros(0, dtype=complex), num
    quot = np.zeros(len(num) - dn, dtype=complex)
    lead = den[-1]
    for k in range(len(num) - 1, dn - 1, -1):
        coef = num[k] / lead
        quot[k - dn] = coef
        num[k - dn : k + 1] -= coef * den
    return quot, num[:dn]


def poly_divmod(num: Polynomial, den: Polynomial):
    if den.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    q, r = _divmod_arrays(num.coeffs, den.coeffs)
    return Polynomial(q), Polynomial(r)


def gcd_degree(a: Polynomial, b: Polynomial, tol: float = COPRIME_TOL) -> int:
    """Degree of the approximate gcd of ``a`` and ``b`` by Euclid's algorithm.

    Each remainder is truncated against ``tol`` times the largest coefficient
    of the current (normalized) dividend/divisor pair.
    """
    if a.is_zero and b.is_zero:
        raise BothZero("gcd of two zero polynomials is undefined")
    if b.is_zero:
        return a.degree
    if a.is_zero:
        return b.degree
    x = a.coeffs / a.max_abs()
    y = b.coeffs / b.max_abs()
    if len(x) < len(y):
        x, y = y, x
    while len(y) > 1:
        _, rem = _divmod_arrays(x, y)
        scale = max(_max_abs(x), _max_abs(y))
        rem = _trim_rel(rem, scale, tol)
        if rem.size == 0:
            return len(y) - 1
        x, y = y, rem / _max_abs(rem)
    return 0


class RationalFunction:
    """r = p/q with a monic denominator.

    Parameters
    ----------
    numerator, denominator : Polynomial or coefficient sequence
        Ascending coefficients. The pair is rescaled so that ``q`` is monic.
    check : bool
        Run the approximate coprimality gate and raise :class:`NotCoprime`
        when it fails.
    tol : float
        Relative Euclid threshold for the gate.
    """

    __slots__ = ("numerator", "denominator", "_wronskian")

    def __init__(self, numerator, denominator=(1.0,), check: bool = True,
                 tol: float = COPRIME_TOL):
        p = Polynomial(numerator)
        q = Polynomial(denominator)
        if q.is_zero:
            raise ZeroDivisionError("denominator is the zero polynomial")
        lead = q.leading
        if lead != 1:
            p = p / lead
            q = q / lead
        if check and not p.is_zero and gcd_degree(p, q, tol) > 0:
            raise NotCoprime("numerator and denominator share a root within tolerance")
        self.numerator = p
        self.denominator = q
        self._wronskian = None

    @property
    def p(self) -> Polynomial:
        return self.numerator

    @property
    def q(self) -> Polynomial:
        return self.denominator

    @property
    def n_p(self) -> int:
        return max(self.numerator.degree, 0)

    @property
    def n_q(self) -> int:
        return self.denominator.degree

    @property
    def degree(self) -> int:
        return max(self.n_p, self.n_q)

    def __call__(self, z):
        return evaluate(self.numerator, z) / evaluate(self.denominator, z)

    def derivative_at(self, z):
        """r'(z) through the Wronskian numerator over q**2."""
        if self._wronskian is None:
            self._wronskian = wronskian_numerator(self)
        qz = evaluate(self.denominator, z)
        return evaluate(self._wronskian, z) / (qz * qz)

    def shift(self, c: complex) -> "RationalFunction":
        return shift_numerator(self, c)

    def __repr__(self):
        return f"RationalFunction({self.numerator!r}, {self.denominator!r})"


def shift_numerator(r: RationalFunction, c: complex) -> RationalFunction:
    """r_c = (p - c q) / q."""
    if c == 0:
        return r
    return RationalFunction(r.numerator - c * r.denominator, r.denominator)


def compose_with_rational(s: Polynomial, p: Polynomial, q: Polynomial,
                          degree: int | None = None):
    """Return (N, D) with N/D = s(p/q) and D = q**degree.

    ``degree`` defaults to deg(s); a larger value homogenizes the result so
    that several compositions can share one denominator.
    """
    if q.is_zero:
        raise ZeroDivisionError("q must be nonzero")
    m = max(s.degree, 0)
    d = m if degree is None else degree
    if d < m:
        raise ValueError("homogenization degree below deg(s)")
    sc = s.coeffs
    if s.is_zero:
        num = Polynomial()
    else:
        acc = np.array([sc[-1]], dtype=complex)
        qpow = np.array([1.0], dtype=complex)
        pc, qc = p.coeffs, q.coeffs
        for k in range(len(sc) - 2, -1, -1):
            qpow = np.convolve(qpow, qc)
            acc = np.convolve(acc, pc) if pc.size else np.zeros(1, dtype=complex)
            n = max(len(acc), len(qpow))
            out = np.zeros(n, dtype=complex)
            out[: len(acc)] += acc
            out[: len(qpow)] += sc[k] * qpow
            acc = out
        num = Polynomial(acc)
        if d > m:
            num = num * q ** (d - m)
    return num, q ** d


def conjugate_composition(r: RationalFunction):
    """Numerator and denominator of conj(r) o r over the common factor q**n."""
    p, q = r.numerator, r.denominator
    n = r.degree
    top, _ = compose_with_rational(conjugate_coefficients(p), p, q, n)
    bottom, _ = compose_with_rational(conjugate_coefficients(q), p, q, n)
    return top, bottom


def fixed_point_polynomial(r: RationalFunction, c: complex = 0) -> Polynomial:
    """Numerator of conj(r_c)(r_c(z)) - z; every zero of f_c is among its roots."""
    rc = shift_numerator(r, c)
    if rc.degree < 2:
        raise OutOfScope(f"deg(r_c) = {rc.degree} < 2")
    top, bottom = conjugate_composition(rc)
    zb = bottom * Polynomial([0.0, 1.0])
    out = top - zb
    if out.is_zero:
        raise DegenerateComposition("conj(r_c) o r_c is the identity")
    return out


def wronskian_numerator(r: RationalFunction) -> Polynomial:
    """p'q - pq', the numerator of r'."""
    p, q = r.numerator, r.denominator
    return derivative(p) * q - p * derivative(q)

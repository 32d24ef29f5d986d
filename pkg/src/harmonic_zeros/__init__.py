"""Zeros of rational harmonic functions f_c(z) = r(z) - conj(z) - c."""

__version__ = "0.1.0"

from .bounds import (
    BoundCase,
    BoundReport,
    assess,
    leading_ratio_case,
    max_zero_bound,
    reduce_equal_degree,
    signature,
)
from .dynamics import (
    build_R,
    caustic_points,
    critical_curve_sample,
    fold_normal,
    nonrepelling_zeros_via_orbits,
)
from .errors import HarmonicZerosError
from .gallery import InstanceSpec, by_name, monomial_harmonic, mpw, random_instance, rhie
from .poly import Polynomial, RationalFunction, fixed_point_polynomial
from .roots import RootSet, find_roots
from .solver import Orientation, SolverConfig, Zero, ZeroSet, solve
from .winding import Circle, verify_argument_principle, winding_number

__all__ = [
    "BoundCase", "BoundReport", "Circle", "HarmonicZerosError", "InstanceSpec",
    "Orientation", "Polynomial", "RationalFunction", "RootSet", "SolverConfig", "Zero",
    "ZeroSet", "assess", "build_R", "by_name", "caustic_points", "critical_curve_sample",
    "find_roots", "fixed_point_polynomial", "fold_normal", "leading_ratio_case",
    "max_zero_bound", "monomial_harmonic", "mpw", "nonrepelling_zeros_via_orbits",
    "random_instance", "reduce_equal_degree", "rhie", "signature", "solve",
    "verify_argument_principle", "winding_number",
]

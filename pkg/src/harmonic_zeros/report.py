"""Instance files and the full solve pipeline report."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import bounds
from .dynamics import nonrepelling_zeros_via_orbits
from .gallery import InstanceSpec, by_name
from .poly import Polynomial, RationalFunction
from .solver import SolverConfig, ZeroSet, solve
from .winding import (
    Circle,
    Verdict,
    enclosing_radius,
    large_circle_signature,
    verify_argument_principle,
)

SCHEMA_VERSION = 1


class InstanceError(ValueError):
    """Malformed or unreadable instance input."""


def _pair(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def _unpair(v) -> complex:
    if isinstance(v, (int, float)):
        return complex(v)
    if not isinstance(v, (list, tuple)) or len(v) != 2:
        raise InstanceError(f"expected [re, im], got {v!r}")
    return complex(float(v[0]), float(v[1]))


def instance_to_dict(spec: InstanceSpec) -> dict:
    return {
        "v": SCHEMA_VERSION,
        "name": spec.name,
        "p": [_pair(a) for a in spec.r.numerator.coeffs],
        "q": [_pair(a) for a in spec.r.denominator.coeffs],
        "c": _pair(spec.c),
    }


def instance_from_dict(doc: dict) -> InstanceSpec:
    if not isinstance(doc, dict):
        raise InstanceError("instance document must be a JSON object")
    if doc.get("v") != SCHEMA_VERSION:
        raise InstanceError(f"unsupported schema version {doc.get('v')!r}")
    try:
        p = Polynomial([_unpair(a) for a in doc["p"]])
        q = Polynomial([_unpair(a) for a in doc["q"]])
    except KeyError as exc:
        raise InstanceError(f"missing field {exc.args[0]!r}") from None
    c = _unpair(doc.get("c", [0.0, 0.0]))
    r = RationalFunction(p, q)
    return InstanceSpec(doc.get("name", "instance"), r, c, None, "file")


def load_instance(ref: str, **params) -> InstanceSpec:
    """Resolve ``gallery:NAME`` or a path to an instance JSON file."""
    if ref.startswith("gallery:"):
        try:
            return by_name(ref[len("gallery:"):], **params)
        except KeyError as exc:
            raise InstanceError(str(exc.args[0])) from None
    path = Path(ref)
    if not path.is_file():
        raise InstanceError(f"{ref}: no such file")
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise InstanceError(f"{ref}: invalid JSON ({exc})") from None
    return instance_from_dict(doc)


def _same_points(a: np.ndarray, b: np.ndarray, tol: float) -> bool:
    if len(a) != len(b):
        return False
    if len(a) == 0:
        return True
    used = np.zeros(len(b), dtype=bool)
    for z in a:
        d = np.abs(b - z)
        d[used] = np.inf
        k = int(np.argmin(d))
        if d[k] > tol:
            return False
        used[k] = True
    return True


@dataclass
class PipelineResult:
    spec: InstanceSpec
    zeroset: ZeroSet
    report: bounds.BoundReport
    winding: dict
    oracle: dict

    @property
    def violations(self) -> list[str]:
        out = []
        if not self.report.within_bound:
            out.append("bound")
        if self.report.attained and not self.report.regular:
            out.append("attained-but-singular")
        if self.winding["verdict"] == Verdict.UNEQUAL.value:
            out.append("argument-principle")
        if self.oracle["verdict"] == "disagree":
            out.append("orbit-oracle")
        return out

    def to_dict(self) -> dict:
        zs, rep = self.zeroset, self.report
        return {
            "v": SCHEMA_VERSION,
            "name": self.spec.name,
            "c": _pair(self.spec.c),
            "degrees": {"n_p": self.spec.r.n_p, "n_q": self.spec.r.n_q,
                        "n_p_shifted": rep.n_p},
            "case": rep.case.value,
            "bound": rep.bound,
            "attained": rep.attained,
            "regular": rep.regular,
            "alpha": None if rep.alpha is None else _pair(rep.alpha),
            "counts": {"N": zs.count, "N_plus": zs.n_plus, "N_minus": zs.n_minus,
                       "N_zero": zs.n_zero},
            "zeros": [
                {"location": _pair(z.location), "r_prime_abs": z.r_prime_abs,
                 "orientation": z.orientation.value, "residual": z.residual}
                for z in zs.zeros
            ],
            "near_caustic": zs.near_caustic,
            "winding": self.winding,
            "orbit_oracle": self.oracle,
            "violations": self.violations,
        }


def run_pipeline(spec: InstanceSpec, cfg: SolverConfig | None = None) -> PipelineResult:
    """solve, assess, verify the argument principle on the enclosing circle
    and cross-check the non-sense-preserving zeros against the orbit oracle."""
    cfg = cfg or SolverConfig()
    r, c = spec.r, spec.c
    zs = solve(r, c, cfg)
    rep = bounds.assess(r, c, zs)

    radius = enclosing_radius(r, c, cfg.radius_factor)
    check = verify_argument_principle(r, c, Circle(0j, radius), zs, cfg.tau_sing)
    winding = {
        "verdict": check.verdict.value,
        "radius": radius,
        "winding": check.winding,
        "expected": check.expected,
        "poles_inside": check.poles_inside,
        "large_circle_signature": large_circle_signature(rep.n_p, rep.n_q),
    }

    oracle_res = nonrepelling_zeros_via_orbits(r, c, solver_cfg=cfg)
    agree = _same_points(np.sort_complex(zs.nonrepelling()),
                         np.sort_complex(oracle_res.points), 1e-6)
    if not oracle_res.complete:
        verdict = "partial"
    else:
        verdict = "agree" if agree else "disagree"
    oracle = {
        "verdict": verdict,
        "complete": oracle_res.complete,
        "nonrepelling": [_pair(z) for z in oracle_res.points],
    }
    return PipelineResult(spec, zs, rep, winding, oracle)

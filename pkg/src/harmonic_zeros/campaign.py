"""Seeded random campaigns that check every numerical invariant per instance."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import bounds
from .dynamics import build_R
from .errors import HarmonicZerosError
from .gallery import SplitMix64, random_instance
from .poly import evaluate, evaluate_abs_bound, fixed_point_polynomial
from .report import run_pipeline
from .solver import SolverConfig

THREADS_ENV = "HARMONIC_ZEROS_THREADS"


@dataclass
class InstanceCheck:
    n_p: int
    n_q: int
    seed: int
    count: int = 0
    n_plus: int = 0
    n_minus: int = 0
    n_zero: int = 0
    orbit_complete: bool = False
    failures: list = field(default_factory=list)

    def fail(self, check: str, detail: str):
        self.failures.append({"check": check, "detail": detail})


def instance_seed(seed: int, n_p: int, n_q: int, i: int) -> int:
    gen = SplitMix64((seed << 16) ^ (n_p << 8) ^ n_q)
    return (gen.next_u64() + i) & ((1 << 63) - 1)


def check_instance(n_p: int, n_q: int, seed: int, cfg: SolverConfig | None = None) -> InstanceCheck:
    cfg = cfg or SolverConfig()
    out = InstanceCheck(n_p, n_q, seed)
    try:
        spec = random_instance(n_p, n_q, seed)
        res = run_pipeline(spec, cfg)
    except HarmonicZerosError as exc:
        out.fail("pipeline", f"{type(exc).__name__}: {exc}")
        return out
    zs, rep = res.zeroset, res.report
    out.count, out.n_plus, out.n_minus, out.n_zero = zs.count, zs.n_plus, zs.n_minus, zs.n_zero
    out.orbit_complete = res.oracle["complete"]
    r = spec.r

    bound = bounds.max_zero_bound(n_p, n_q)
    if zs.count > bound:
        out.fail("zero-bound", f"N = {zs.count} > {bound}")
    if rep.reduced_bound is not None and zs.count > rep.reduced_bound:
        out.fail("equal-degree-reduction", f"N = {zs.count} > {rep.reduced_bound}")
    if zs.n_zero + zs.n_minus > n_p + n_q - 1:
        out.fail("nonrepelling-count", f"N0 + N- = {zs.n_zero + zs.n_minus} > {n_p + n_q - 1}")
    if zs.n_zero == 0 and rep.expected_signature is not None:
        if zs.n_plus - zs.n_minus != rep.expected_signature:
            out.fail("signature", f"N+ - N- = {zs.n_plus - zs.n_minus}, "
                                  f"expected {rep.expected_signature}")
    if rep.attained and not rep.regular:
        out.fail("attained-but-singular", f"N = {zs.count} with N0 = {zs.n_zero}")

    Q = fixed_point_polynomial(r, spec.c)
    R = build_R(r, spec.c)
    for z in zs.zeros:
        w = z.location
        if z.residual > cfg.polish_tol * (1 + abs(w)):
            out.fail("residual", f"|f_c({w})| = {z.residual:.3g}")
        qres = abs(evaluate(Q, w)) / evaluate_abs_bound(Q, w)
        if qres > cfg.root_tol:
            out.fail("fixed-point-root", f"relative |Q({w})| = {qres:.3g}")
        dR = abs(R.derivative(w))
        if abs(dR - z.r_prime_abs ** 2) > 1e-6 * max(1.0, z.r_prime_abs ** 2):
            out.fail("multiplier", f"|R'| = {dR:.12g}, |r'|^2 = {z.r_prime_abs ** 2:.12g}")
    locs = zs.locations
    for i in range(len(locs)):
        for j in range(i + 1, len(locs)):
            if abs(locs[i] - locs[j]) <= cfg.dedupe_rel * (1 + abs(locs[i])):
                out.fail("dedupe", f"{locs[i]} and {locs[j]} coincide")

    if res.winding["verdict"] == "unequal":
        out.fail("argument-principle", str(res.winding))
    sig = res.winding["large_circle_signature"]
    if sig is not None and res.winding["winding"] is not None and res.winding["winding"] != sig:
        out.fail("large-circle", f"V = {res.winding['winding']}, expected {sig}")

    oracle_pts = np.array([complex(*p) for p in res.oracle["nonrepelling"]], dtype=complex)
    solver_pts = zs.nonrepelling()
    if res.oracle["verdict"] == "disagree":
        out.fail("orbit-oracle", f"solver {solver_pts}, orbits {oracle_pts}")
    elif not out.orbit_complete:
        # a partial enumeration must still be a subset of the solver's set
        for w in oracle_pts:
            if solver_pts.size == 0 or np.min(np.abs(solver_pts - w)) > 1e-6:
                out.fail("orbit-oracle", f"orbit limit {w} not among solver zeros")
    if len(oracle_pts) > n_p + n_q - 1:
        out.fail("nonrepelling-count", f"{len(oracle_pts)} orbit limits > {n_p + n_q - 1}")
    return out


def _check_args(args):
    return check_instance(*args)


def parallel_map(fn, items, threads: int | None = None):
    """Ordered map; runs in a process pool when more than one worker is allowed."""
    if threads is None:
        threads = int(os.environ.get(THREADS_ENV, "1") or 1)
    items = list(items)
    if threads <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


@dataclass
class CampaignSummary:
    seed: int
    count: int
    pairs: list
    checks: list

    @property
    def failures(self) -> list:
        return [
            {"n_p": c.n_p, "n_q": c.n_q, "seed": c.seed, **f}
            for c in self.checks for f in c.failures
        ]

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def orbit_complete_fraction(self) -> float:
        if not self.checks:
            return 1.0
        return sum(c.orbit_complete for c in self.checks) / len(self.checks)

    def to_dict(self) -> dict:
        per_pair = {}
        for c in self.checks:
            key = f"{c.n_p},{c.n_q}"
            d = per_pair.setdefault(key, {"instances": 0, "max_N": 0,
                                          "bound": bounds.max_zero_bound(c.n_p, c.n_q)})
            d["instances"] += 1
            d["max_N"] = max(d["max_N"], c.count)
        return {
            "v": 1,
            "seed": self.seed,
            "count": self.count,
            "instances": len(self.checks),
            "violations": len(self.failures),
            "orbit_complete_fraction": self.orbit_complete_fraction,
            "pairs": per_pair,
            "failures": self.failures,
        }


def degree_pairs(np_range, nq_range):
    return [(a, b) for a in np_range for b in nq_range if max(a, b) >= 2]


def run_campaign(pairs, count: int, seed: int, cfg: SolverConfig | None = None,
                 threads: int | None = None) -> CampaignSummary:
    jobs = [(a, b, instance_seed(seed, a, b, i), cfg)
            for a, b in pairs for i in range(count)]
    checks = parallel_map(_check_args, jobs, threads)
    return CampaignSummary(seed, count, list(pairs), checks)

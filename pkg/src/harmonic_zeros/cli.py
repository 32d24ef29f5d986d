"""Command-line interface.

Exit codes: 0 success, 1 input error, 2 invariant violation, 3 empty result.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .campaign import degree_pairs, parallel_map, run_campaign
from .dynamics import caustic_points, critical_curve_sample, fold_normal
from .errors import EmptyWindow, HarmonicZerosError
from .gallery import CATALOG, InstanceSpec, by_name
from .report import InstanceError, instance_to_dict, load_instance, run_pipeline
from .roots import find_roots
from .solver import SolverConfig, solve

EXIT_OK, EXIT_INPUT, EXIT_VIOLATION, EXIT_EMPTY = 0, 1, 2, 3


def parse_complex(text: str) -> complex:
    text = text.strip()
    if "," in text:
        re_, im_ = text.split(",")
        return complex(float(re_), float(im_))
    return complex(text.replace(" ", ""))


def parse_range(text: str) -> list[int]:
    """``0..4`` (inclusive), ``1,3,4`` or a single integer."""
    if ".." in text:
        lo, hi = text.split("..")
        return list(range(int(lo), int(hi) + 1))
    return [int(t) for t in text.split(",")]


def parse_window(text: str) -> tuple[float, float, float, float]:
    parts = [float(t) for t in text.split(",")]
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("window must be xmin,xmax,ymin,ymax")
    return tuple(parts)


def _config(args) -> SolverConfig:
    return SolverConfig().with_(
        root_tol=args.tol_root,
        accept_tol=args.tol_accept,
        tau_sing=args.tau_sing,
        radius_factor=args.radius_factor,
        max_iter=args.max_iter,
    )


def _instance(args) -> InstanceSpec:
    spec = load_instance(args.instance, a=args.a, epsilon=args.epsilon)
    if args.c is not None:
        spec = InstanceSpec(spec.name, spec.r, args.c, None, spec.provenance)
    return spec


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _json_text(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _plot_window(points, pad=0.5):
    pts = np.asarray(points, dtype=complex)
    if pts.size == 0:
        return (-2.0, 2.0, -2.0, 2.0)
    span = max(np.max(np.abs(pts.real)), np.max(np.abs(pts.imag)), 1.0) + pad
    return (-span, span, -span, span)


# -- subcommands -----------------------------------------------------------

def cmd_solve(args) -> int:
    spec = _instance(args)
    cfg = _config(args)
    result = run_pipeline(spec, cfg)
    doc = result.to_dict()
    if args.format == "csv":
        rows = [[z["location"][0], z["location"][1], z["r_prime_abs"], z["orientation"],
                 z["residual"]] for z in doc["zeros"]]
        _emit(_csv_text(["re", "im", "r_prime_abs", "orientation", "residual"], rows), args.out)
    else:
        _emit(_json_text(doc), args.out)
    if args.plot:
        from .plotting import plot_zeros

        rc = spec.r.shift(spec.c)
        poles = find_roots(rc.denominator).roots if rc.n_q else []
        window = _plot_window(np.concatenate([result.zeroset.locations, np.asarray(poles)]))
        try:
            curve = critical_curve_sample(rc, window, 300)
        except EmptyWindow:
            curve = None
        plot_zeros(result.zeroset, poles, curve, args.plot,
                   title=f"{spec.name}: N = {result.zeroset.count}, bound {result.report.bound}")
    if result.violations:
        print(f"invariant violation: {', '.join(result.violations)}", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def _sweep_point(job):
    index, r, c, cfg = job
    row = {"index": index, "c_re": c.real, "c_im": c.imag}
    try:
        zs = solve(r, c, cfg)
    except HarmonicZerosError as exc:
        row.update(N="", N_plus="", N_minus="", N_zero="", status=type(exc).__name__)
        return row
    row.update(N=zs.count, N_plus=zs.n_plus, N_minus=zs.n_minus, N_zero=zs.n_zero, status="ok")
    return row


SWEEP_FIELDS = ["index", "c_re", "c_im", "N", "N_plus", "N_minus", "N_zero", "status"]


def sweep_values(args) -> list[complex]:
    if args.grid is not None:
        x0, x1, y0, y1 = args.grid
        xs = np.linspace(x0, x1, args.grid_n)
        ys = np.linspace(y0, y1, args.grid_n)
        return [complex(x, y) for y in ys for x in xs]
    a, b = args.from_, args.to
    return [a + (b - a) * t for t in np.linspace(0.0, 1.0, args.samples)]


def cmd_sweep(args) -> int:
    spec = _instance(args)
    cfg = _config(args)
    jobs = [(i, spec.r, complex(c), cfg) for i, c in enumerate(sweep_values(args))]
    rows = parallel_map(_sweep_point, jobs)
    if args.format == "json":
        _emit(_json_text({"v": 1, "name": spec.name, "rows": rows}), args.out)
    else:
        _emit(_csv_text(SWEEP_FIELDS, [[r[k] for k in SWEEP_FIELDS] for r in rows]), args.out)
    if args.plot:
        from .plotting import plot_sweep

        plot_sweep(rows, args.plot, title=f"{spec.name}: zero count along the sweep")
    return EXIT_OK


def cmd_caustic(args) -> int:
    spec = _instance(args)
    rc = spec.r.shift(spec.c)
    try:
        curve = critical_curve_sample(rc, args.window, args.grid_n)
    except EmptyWindow as exc:
        print(f"empty result: {exc}", file=sys.stderr)
        return EXIT_EMPTY
    caustic = caustic_points(rc, curve)
    normals = [fold_normal(rc, z) for z in curve]
    if args.format == "json":
        doc = {"v": 1, "name": spec.name, "points": [
            {"z": [z.real, z.imag], "c": [w.real, w.imag], "normal": [n.real, n.imag]}
            for z, w, n in zip(curve, caustic, normals)]}
        _emit(_json_text(doc), args.out)
    else:
        rows = [[z.real, z.imag, w.real, w.imag, n.real, n.imag]
                for z, w, n in zip(curve, caustic, normals)]
        _emit(_csv_text(["z_re", "z_im", "c_re", "c_im", "normal_re", "normal_im"], rows),
              args.out)
    if args.plot:
        from .plotting import plot_caustic

        plot_caustic(curve, caustic, args.plot, title=spec.name)
    return EXIT_OK


def cmd_fuzz(args) -> int:
    cfg = _config(args)
    pairs = degree_pairs(parse_range(args.np), parse_range(args.nq))
    if not pairs:
        print("no degree pair with max(n_p, n_q) >= 2", file=sys.stderr)
        return EXIT_INPUT
    summary = run_campaign(pairs, args.count, args.seed if args.seed is not None else 0, cfg)
    doc = summary.to_dict()
    _emit(_json_text(doc), args.out)
    if not summary.ok:
        Path(args.repro).write_text(_json_text(summary.failures))
        print(f"{len(summary.failures)} invariant violations; reproduction seeds in "
              f"{args.repro}", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_gallery(args) -> int:
    if args.export:
        spec = by_name(args.export, a=args.a, epsilon=args.epsilon)
        _emit(_json_text(instance_to_dict(spec)), args.out)
    else:
        _emit("\n".join(CATALOG) + "\n", args.out)
    return EXIT_OK


# -- parser ----------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    """Usage errors are input errors (exit 1); 2 is reserved for violations."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    g = common.add_argument_group("numerical settings")
    g.add_argument("--tol-root", type=float, default=None, help="root residual tolerance (1e-12)")
    g.add_argument("--tol-accept", type=float, default=None, help="zero acceptance tolerance (1e-6)")
    g.add_argument("--tau-sing", type=float, default=None, help="singular band half-width (1e-8)")
    g.add_argument("--radius-factor", type=float, default=None,
                   help="factor on the enclosing circle radius (2)")
    g.add_argument("--max-iter", type=int, default=None, help="root iteration cap (200)")
    common.add_argument("--out", default=None, help="write output here instead of stdout")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--format", choices=("json", "csv"), default=None)
    common.add_argument("--plot", default=None, metavar="PNG", help="also render a figure")

    inst = _Parser(add_help=False)
    inst.add_argument("instance", help="instance JSON path or gallery:NAME")
    inst.add_argument("--a", type=float, default=None, help="lens radius for mpw/rhie")
    inst.add_argument("--epsilon", type=float, default=None, help="central mass for rhie")
    inst.add_argument("--c", type=parse_complex, default=None, help="override the shift c")

    parser = _Parser(
        prog="harmonic-zeros",
        description="Zeros of rational harmonic functions r(z) - conj(z) - c.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", parents=[common, inst], help="solve one instance")
    p.set_defaults(func=cmd_solve, default_format="json")

    p = sub.add_parser("sweep", parents=[common, inst], help="zero counts along a path of shifts")
    p.add_argument("--from", dest="from_", type=parse_complex, default=0j)
    p.add_argument("--to", type=parse_complex, default=2 + 0j)
    p.add_argument("--samples", type=int, default=41)
    p.add_argument("--grid", type=parse_window, default=None,
                   help="xmin,xmax,ymin,ymax (write --grid=-1,1,-1,1 for negative values)")
    p.add_argument("--grid-n", type=int, default=21)
    p.set_defaults(func=cmd_sweep, default_format="csv")

    p = sub.add_parser("caustic", parents=[common, inst], help="sample the caustic")
    p.add_argument("--window", type=parse_window, default=(-2.0, 2.0, -2.0, 2.0))
    p.add_argument("--grid-n", type=int, default=400)
    p.set_defaults(func=cmd_caustic, default_format="csv")

    p = sub.add_parser("fuzz", parents=[common], help="random invariant campaign")
    p.add_argument("--np", default="0..4")
    p.add_argument("--nq", default="0..4")
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--repro", default="fuzz_failures.json")
    p.set_defaults(func=cmd_fuzz, default_format="json")

    p = sub.add_parser("gallery", parents=[common], help="list or export catalog instances")
    p.add_argument("--export", default=None, metavar="NAME")
    p.add_argument("--a", type=float, default=None)
    p.add_argument("--epsilon", type=float, default=None)
    p.set_defaults(func=cmd_gallery, default_format="json")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = args.default_format
    try:
        return args.func(args)
    except InstanceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except HarmonicZerosError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

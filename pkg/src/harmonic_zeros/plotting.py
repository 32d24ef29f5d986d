"""Figures written next to the CLI's CSV/JSON output.

matplotlib is imported lazily, with the Agg backend, so the numerical modules
never depend on it.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

_COLORS = {"sense-preserving": "tab:red", "sense-reversing": "tab:blue", "singular": "k"}
_MARKERS = {"sense-preserving": "o", "sense-reversing": "s", "singular": "x"}


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def _finish(fig, path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    _pyplot().close(fig)
    return path


def plot_zeros(zeroset, poles=(), critical_curve=None, path="zeros.png", title=None):
    """Zeros in the plane, marked by orientation, with poles and the critical curve."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(5.5, 5.5))
    if critical_curve is not None and len(critical_curve):
        cc = np.asarray(critical_curve)
        ax.plot(cc.real, cc.imag, ",", color="0.6", label="|r'| = 1")
    for kind in _COLORS:
        pts = [z.location for z in zeroset.zeros if z.orientation.value == kind]
        if pts:
            pts = np.array(pts)
            ax.plot(pts.real, pts.imag, _MARKERS[kind], color=_COLORS[kind],
                    ms=6, ls="none", label=f"{kind} ({len(pts)})")
    poles = np.asarray(poles, dtype=complex)
    if poles.size:
        ax.plot(poles.real, poles.imag, "+", color="tab:green", ms=9, ls="none", label="poles")
    ax.set_aspect("equal")
    ax.set_xlabel("Re z")
    ax.set_ylabel("Im z")
    ax.set_title(title or f"N = {zeroset.count}")
    ax.legend(loc="upper left", bbox_to_anchor=(1.02, 1.0), fontsize=8)
    return _finish(fig, path)


def plot_caustic(curve, caustic, path="caustic.png", title=None):
    """Critical curve (left) and its image, the caustic (right)."""
    plt = _pyplot()
    fig, (a0, a1) = plt.subplots(1, 2, figsize=(10, 4.8))
    curve = np.asarray(curve)
    caustic = np.asarray(caustic)
    a0.plot(curve.real, curve.imag, ".", ms=1.5, color="tab:purple")
    a0.set_title("critical curve |r'(z)| = 1")
    a1.plot(caustic.real, caustic.imag, ".", ms=1.5, color="tab:orange")
    a1.set_title("caustic")
    for ax in (a0, a1):
        ax.set_aspect("equal")
        ax.set_xlabel("Re")
        ax.set_ylabel("Im")
    if title:
        fig.suptitle(title)
    return _finish(fig, path)


def plot_sweep(rows, path="sweep.png", title=None):
    """Zero counts along a sweep, against the sample index."""
    plt = _pyplot()
    ok = [r for r in rows if r["status"] == "ok"]
    fig, ax = plt.subplots(figsize=(6.5, 3.8))
    if ok:
        idx = np.array([r["index"] for r in ok])
        for key, style, label in (("N", "k-", "N"), ("N_plus", "r--", "N+"),
                                  ("N_minus", "b:", "N-")):
            ax.step(idx, [r[key] for r in ok], style, where="mid", label=label)
    ax.set_xlabel("sample")
    ax.set_ylabel("number of zeros")
    ax.set_title(title or "zero count along the sweep")
    ax.legend(fontsize=8)
    return _finish(fig, path)

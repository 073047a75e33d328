"""Figure rendering for scan and series reports.

Figures land as PNG files next to the delimited output; filenames are
deterministic, figure bytes are matplotlib's business and excluded from
byte-determinism guarantees.
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def _save(fig, outdir, name):
    os.makedirs(outdir, exist_ok=True)
    path = os.path.join(outdir, name)
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return path


def plot_scan(table, outdir):
    """One figure per scalar metric family of a ScanTable; returns paths."""
    paths = []
    groups = {}
    for col in table.column_names():
        if col in ("k", "error"):
            continue
        fam = col.split("_")[0]
        groups.setdefault(fam, []).append(col)
    for fam, cols in groups.items():
        fig, ax = plt.subplots(figsize=(5, 3.4))
        drew = False
        for col in cols:
            pts = [(k, v) for k, v in table.series(col) if v is not None]
            if not pts:
                continue
            ks = [k for k, _ in pts]
            vs = [float(v) for _, v in pts]
            ax.plot(ks, vs, marker="o", label=col)
            drew = True
        if not drew:
            plt.close(fig)
            continue
        ax.set_xlabel("power k")
        ax.set_ylabel(fam)
        ax.set_title(f"{fam} per power")
        ax.legend(fontsize=8)
        ax.grid(alpha=0.3)
        paths.append(_save(fig, outdir, f"scan_{fam}.png"))
    return paths


def plot_series_comparison(actual, bound, outdir, name="poincare"):
    """Actual Poincare coefficients against the Golod bound."""
    fig, ax = plt.subplots(figsize=(5, 3.4))
    idx = list(range(len(actual)))
    ax.plot(idx, [float(c) for c in actual], marker="o", label="actual")
    ax.plot(idx, [float(c) for c in bound], marker="s", linestyle="--",
            label="Golod bound")
    ax.set_xlabel("homological degree i")
    ax.set_ylabel("coefficient")
    ax.set_yscale("log")
    ax.set_title("Poincare series vs Golod bound")
    ax.legend(fontsize=8)
    ax.grid(alpha=0.3)
    return _save(fig, outdir, f"{name}.png")


def plot_deviations(eps, outdir, name="deviations"):
    fig, ax = plt.subplots(figsize=(5, 3.4))
    ax.bar(range(len(eps)), [float(e) for e in eps])
    ax.set_xlabel("index i")
    ax.set_ylabel("deviation")
    ax.set_title("deviation sequence")
    ax.grid(alpha=0.3, axis="y")
    return _save(fig, outdir, f"{name}.png")

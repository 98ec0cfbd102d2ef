"""Tabular and graphical reports for labelings.

Figures are written with the non-interactive Agg backend so the report
commands work on headless machines.
"""

from __future__ import annotations

import json
from contextlib import contextmanager
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from hypercube_dml.core import BalanceReport, Labeling, neighbor_sum  # noqa: E402

RC = {
    "font.size": 10,
    "axes.titlesize": 11,
    "axes.labelsize": 10,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "figure.dpi": 100,
    "savefig.dpi": 150,
    "savefig.bbox": "tight",
}


@contextmanager
def _style():
    with plt.rc_context(RC):
        yield


def balance_table(lab: Labeling, report: BalanceReport, sep: str = "\t") -> str:
    """One row per vertex: vertex, label, neighbor sum, then the bit counts c0..c{n-1}."""
    header = ["vertex", "label", "neighbor_sum"] + [f"c{i}" for i in range(report.n)]
    lines = [sep.join(header)]
    for v, row in enumerate(report.counts):
        cells = [v, lab[v], neighbor_sum(lab, v), *row]
        lines.append(sep.join(map(str, cells)))
    return "\n".join(lines) + "\n"


def balance_json(report: BalanceReport) -> str:
    return json.dumps(report.to_dict(), indent=2)


def plot_labeling(lab: Labeling, path: str | Path, title: str | None = None) -> Path:
    """Heat map of the labeling laid out as a table, vertex 0 and its neighbors outlined."""
    table = np.array(lab.table())
    rows, cols = table.shape
    with _style():
        fig, ax = plt.subplots(figsize=(0.55 * cols + 1.5, 0.55 * rows + 1))
        im = ax.imshow(table, cmap="viridis", vmin=0, vmax=len(lab) - 1)
        for r in range(rows):
            for c in range(cols):
                x = table[r, c]
                ax.text(c, r, str(x), ha="center", va="center", fontsize=8,
                        color="white" if x < len(lab) / 2 else "black")
        marked = [0] + [1 << i for i in range(lab.n)]
        for v in marked:
            r, c = divmod(v, cols)
            ax.add_patch(plt.Rectangle((c - 0.5, r - 0.5), 1, 1, fill=False, ec="red", lw=1.5))
        ax.set_xticks(range(cols), [format(c, f"0{max(1, (cols - 1).bit_length())}b") for c in range(cols)])
        ax.set_yticks(range(rows), [format(r, f"0{max(1, (rows - 1).bit_length())}b") for r in range(rows)])
        ax.set_xlabel("low vertex bits")
        ax.set_ylabel("high vertex bits")
        ax.set_title(title or f"labeling of Q_{lab.n}")
        fig.colorbar(im, ax=ax, fraction=0.046, pad=0.04)
        fig.savefig(path)
        plt.close(fig)
    return Path(path)


def plot_balance(report: BalanceReport, path: str | Path, title: str | None = None) -> Path:
    """Deviation of each neighbor bit count from n/2; balanced labelings are blank."""
    counts = np.array(report.counts, dtype=int)
    dev = counts - report.n // 2
    lim = max(1, int(np.abs(dev).max()))
    with _style():
        fig, ax = plt.subplots(figsize=(2 + 0.4 * report.n, 4 + len(counts) / 32))
        im = ax.imshow(dev, cmap="RdBu_r", vmin=-lim, vmax=lim, aspect="auto", interpolation="nearest")
        ax.set_xticks(range(report.n))
        ax.set_xlabel("digit position (0 = least significant)")
        ax.set_ylabel("vertex")
        verdict = "balanced" if report.balanced else f"{len(report.witnesses)} unbalanced entries"
        ax.set_title(title or f"neighbor digit counts minus n/2 ({verdict})")
        fig.colorbar(im, ax=ax, label="count - n/2")
        fig.savefig(path)
        plt.close(fig)
    return Path(path)


def plot_neighbor_sums(lab: Labeling, path: str | Path, target: float | None = None) -> Path:
    sums = [neighbor_sum(lab, v) for v in range(len(lab))]
    with _style():
        fig, ax = plt.subplots(figsize=(7, 2.8))
        ax.bar(range(len(sums)), sums, width=0.8, color="0.6")
        if target is not None:
            ax.axhline(target, color="red", lw=1, label=f"magic constant {target}")
            ax.legend(loc="lower right", frameon=False)
        ax.set_xlim(-0.5, len(sums) - 0.5)
        ax.set_xlabel("vertex")
        ax.set_ylabel("neighbor label sum")
        fig.savefig(path)
        plt.close(fig)
    return Path(path)


def write_figures(lab: Labeling, report: BalanceReport | None, outdir: str | Path, stem: str = "labeling") -> list[Path]:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    target = lab.n * (len(lab) - 1) / 2
    if target == int(target):
        target = int(target)
    paths = [
        plot_labeling(lab, outdir / f"{stem}_table.png"),
        plot_neighbor_sums(lab, outdir / f"{stem}_sums.png", target),
    ]
    if report is not None:
        paths.append(plot_balance(report, outdir / f"{stem}_balance.png"))
    return paths

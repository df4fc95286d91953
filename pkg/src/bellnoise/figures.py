"""Figure rendering for report data.

Renders the same quantities the CSV/JSON reports carry: Bell outcome
distributions as bar charts, and estimator mean/std against the noise
weight with the theoretical bound overlaid.  Files are written with fixed
metadata so identical runs produce identical bytes.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .harness import MonteCarloReport

_PNG_METADATA = {"Software": "bellnoise"}

_BELL_TICKS = (r"$\psi^-$", r"$\phi^-$", r"$\phi^+$", r"$\psi^+$")


def save_bell_probs_figure(report: dict, path: str) -> None:
    """Bar chart of the Bell outcome distribution per timing configuration."""
    rows = report["rows"]
    fig, axes = plt.subplots(1, len(rows), figsize=(3.2 * len(rows), 2.8), squeeze=False)
    for ax, row in zip(axes[0], rows):
        probs = list(row["probabilities"].values())
        ax.bar(range(4), probs, color="tab:blue")
        ax.set_xticks(range(4), _BELL_TICKS)
        ax.set_ylim(0, 1)
        ax.set_ylabel("probability")
        ax.set_title(
            f"t=({row['t1']:g}, {row['t2']:g}, {row['t3']:g}), T={row['period']:g}",
            fontsize=9,
        )
    fig.tight_layout()
    fig.savefig(path, metadata=_PNG_METADATA)
    plt.close(fig)


def save_montecarlo_figure(report: MonteCarloReport, path: str) -> None:
    """Two panels: estimate mean vs true weight, and empirical std vs bound.

    Rows are grouped into one series per (estimator, count budget), so
    comparison ladders render as separate curves.
    """
    groups: dict[tuple[str, float], list] = {}
    for row in report.rows:
        groups.setdefault((row.estimator, row.counts), []).append(row)

    fig, (ax_mean, ax_std) = plt.subplots(1, 2, figsize=(8.0, 3.2))
    for (estimator, counts), rows in sorted(groups.items()):
        rows = sorted(rows, key=lambda r: r.p_true)
        p = [r.p_true for r in rows]
        label = f"{estimator} @ {counts:g}"
        ax_mean.errorbar(p, [r.mean for r in rows], yerr=[r.std for r in rows], marker="o", label=label)
        ax_std.plot(p, [r.std for r in rows], marker="o", label=label)

    grid = np.linspace(0.0, 1.0, 201)
    base = min(counts for _, counts in groups)
    ax_mean.plot([0, 1], [0, 1], "k--", linewidth=0.8)
    ax_std.plot(grid, np.sqrt(grid * (1 - grid) / base), "k-", linewidth=0.8, label=f"bound @ {base:g}")

    ax_mean.set_xlabel("true noise weight")
    ax_mean.set_ylabel("estimate")
    ax_std.set_xlabel("true noise weight")
    ax_std.set_ylabel("standard deviation")
    ax_std.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(path, metadata=_PNG_METADATA)
    plt.close(fig)

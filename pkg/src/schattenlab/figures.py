"""Matplotlib renderings of campaign output, written next to the reports.

Everything here is presentation only: figures never feed back into results,
and campaigns stay byte-reproducible with rendering disabled.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be pinned first)
import numpy as np  # noqa: E402

__all__ = ["margins_figure", "interpolation_figure", "residuals_figure"]


def _save(fig, path) -> Path:
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(p, dpi=130, bbox_inches="tight")
    plt.close(fig)
    return p


def margins_figure(results: list[dict], path) -> Path:
    """Per-suite margin distributions; anything below the zero line is a
    violation."""
    suites: dict[str, list[float]] = {}
    for row in results:
        suites.setdefault(row["suite"], []).append(row["margin"])
    names = sorted(suites)
    fig, ax = plt.subplots(figsize=(1.4 * max(4, len(names)), 4.5))
    if names:
        ax.boxplot([suites[s] for s in names], whis=(0, 100))
        ax.set_xticks(range(1, len(names) + 1))
        ax.set_xticklabels(names)
    ax.axhline(0.0, color="crimson", lw=1.0, ls="--", label="violation threshold")
    ax.set_yscale("symlog", linthresh=1e-12)
    ax.set_ylabel("relative margin (rhs - lhs, normalized)")
    ax.set_title(f"inequality margins across {len(results)} checks")
    ax.legend(loc="upper right", fontsize=8)
    ax.tick_params(axis="x", rotation=30)
    return _save(fig, path)


def interpolation_figure(scan, path, p: float) -> Path:
    """Strip profile: sampled sup |f| per abscissa against the chord bound."""
    xs = np.asarray(scan.x_grid, dtype=float)
    sups = np.asarray(scan.sup_abs, dtype=float)
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(xs, sups, "o-", label=r"sampled sup over y of |f(x+iy)|")
    if scan.m1 > 0 and scan.m2 > 0:
        dense = np.linspace(0.5, 1.0, 200)
        chord = scan.m1 ** (2 * dense - 1) * scan.m2 ** (2 - 2 * dense)
        ax.plot(dense, chord, "-", color="gray", label="log-linear boundary chord")
    ax.plot([1.0 / p], [abs(scan.value_at_target)], "s", color="crimson",
            label=f"|f(1/p)| at p={p:g}")
    ax.plot([1.0 / p], [scan.target_bound], "x", color="crimson", ms=9,
            label="three-lines bound")
    ax.set_xlabel("x (strip abscissa)")
    ax.set_ylabel("|f|")
    ax.set_yscale("log")
    ax.set_title("interpolation scan")
    ax.legend(fontsize=8)
    return _save(fig, path)


def residuals_figure(records: list[dict], path) -> Path:
    """Certificate residuals by instance, colored by status."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    colors = {"feasible": "tab:green", "unresolved": "tab:orange",
              "necessary_condition_violated": "tab:red"}
    by_status: dict[str, list[tuple[int, float]]] = {}
    for idx, rec in enumerate(records):
        by_status.setdefault(rec["status"], []).append((idx, rec["residual"]))
    for status, pts in sorted(by_status.items()):
        xs, ys = zip(*pts)
        ax.scatter(xs, ys, s=14, color=colors.get(status, "tab:blue"),
                   label=f"{status} ({len(pts)})")
    ax.axhline(0.0, color="black", lw=0.8)
    ax.set_xlabel("instance index")
    ax.set_ylabel("residual (max eigenvalue of signed defect)")
    ax.set_yscale("symlog", linthresh=1e-12)
    ax.set_title(f"certificate residuals across {len(records)} instances")
    if by_status:
        ax.legend(fontsize=8)
    return _save(fig, path)

"""Delimited output and figure rendering for the command-line reports.

Files are written deterministically: fixed float formatting, LF endings,
UTF-8, and pinned PNG metadata, so identical inputs give byte-identical
outputs.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

__all__ = [
    "fmt", "write_csv", "figure_path",
    "render_contour", "render_frontier", "render_validation", "render_reproduce",
    "render_sweep",
]

_PNG_META = {"Software": "twobar"}


def fmt(value) -> str:
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        return f"{value:.10g}"
    return str(value)


def write_csv(path, header, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(fmt(v) for v in row) + "\n")


def figure_path(csv_path) -> str:
    s = str(csv_path)
    return (s[:-4] if s.endswith(".csv") else s) + ".png"


def _save(fig, path) -> None:
    fig.savefig(path, dpi=150, metadata=_PNG_META)
    plt.close(fig)


def render_contour(rows, quantity: str, path) -> None:
    xs = sorted({r[0] for r in rows})
    ys = sorted({r[1] for r in rows})
    z = np.array([r[2] for r in rows]).reshape(len(xs), len(ys))
    z = np.where(np.isfinite(z), z, np.nan)
    fig, ax = plt.subplots(figsize=(6.0, 5.0))
    cs = ax.contourf(xs, ys, z.T, levels=24, cmap="viridis")
    ax.contour(xs, ys, z.T, levels=12, colors="k", linewidths=0.4, alpha=0.5)
    fig.colorbar(cs, ax=ax, label=quantity)
    if quantity == "ro_total":
        flat = np.nanargmin(z)
        i, j = divmod(int(flat), len(ys))
        ax.plot(xs[i], ys[j], "r*", markersize=12, label="grid minimum")
        ax.legend(loc="upper right")
    ax.set_xlabel("lam1")
    ax.set_ylabel("lam2")
    ax.set_title(f"{quantity} over the design plane")
    _save(fig, path)


def render_frontier(points, beta_t: float, path) -> None:
    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    feas = [(p.lam1, p.lam2_required) for p in points if p.feasible]
    infeas = [(p.lam1, p.lam2_required) for p in points if not p.feasible]
    if feas:
        ax.plot([x for x, _ in feas], [y for _, y in feas], "b.-", label="required lam2")
    if infeas:
        ax.plot([x for x, _ in infeas], [y for _, y in infeas], "rx",
                label="infeasible (lam2 capped)")
    ax.set_xlabel("lam1")
    ax.set_ylabel("minimal lam2")
    ax.set_title(f"reliability frontier, beta_T = {beta_t:g}")
    ax.legend()
    _save(fig, path)


def render_validation(rows, path) -> None:
    psys = [r for r in rows if r.quantity == "p_sys"]
    fig, ax = plt.subplots(figsize=(max(6.0, 0.42 * len(psys)), 4.5))
    xs = np.arange(len(psys))
    gaps = [r.gap_se if math.isfinite(r.gap_se) else 0.0 for r in psys]
    colors = {"pass": "tab:green", "known": "tab:orange", "fail": "tab:red"}
    ax.bar(xs, gaps, color=[colors[r.status] for r in psys])
    ax.axhline(3.0, color="k", ls="--", lw=0.8)
    ax.axhline(-3.0, color="k", ls="--", lw=0.8)
    ax.set_xticks(xs)
    ax.set_xticklabels([r.case for r in psys], rotation=90, fontsize=7)
    ax.set_ylabel("(simulated - closed form) / SE")
    ax.set_title("system failure probability: simulation vs closed form")
    fig.tight_layout()
    _save(fig, path)


def render_reproduce(report, path) -> None:
    checks = report.checks
    cols = sorted({c.column for c in checks})
    cells = sorted({c.cell for c in checks})
    grid = np.zeros((len(cells), len(cols)))
    for c in checks:
        i, j = cells.index(c.cell), cols.index(c.column)
        grid[i, j] = min(abs(c.deviation) / c.tolerance, 3.0) if c.tolerance else 0.0
    fig, ax = plt.subplots(figsize=(7.0, 5.0))
    im = ax.imshow(grid, cmap="RdYlGn_r", vmin=0.0, vmax=3.0, aspect="auto")
    ax.set_xticks(range(len(cols)), cols)
    ax.set_yticks(range(len(cells)), cells, fontsize=8)
    for c in checks:
        if c.status == "known":
            ax.text(cols.index(c.column), cells.index(c.cell), "k",
                    ha="center", va="center", fontsize=7)
    fig.colorbar(im, ax=ax, label="|deviation| / tolerance (capped at 3)")
    ax.set_title(f"reference table {report.table}: deviations (k = known defect)")
    fig.tight_layout()
    _save(fig, path)


def render_sweep(rows, header, path) -> None:
    idx = {name: i for i, name in enumerate(header)}
    l1 = [r[idx["lam1"]] for r in rows]
    l2 = [r[idx["lam2"]] for r in rows]
    tot = [r[idx["total"]] for r in rows]
    fig, ax = plt.subplots(figsize=(6.0, 5.0))
    sc = ax.scatter(l1, l2, c=tot, cmap="viridis", s=45)
    fig.colorbar(sc, ax=ax, label="total expected cost")
    ax.set_xlabel("lam1")
    ax.set_ylabel("lam2")
    ax.set_title("optimal designs across the sweep")
    _save(fig, path)

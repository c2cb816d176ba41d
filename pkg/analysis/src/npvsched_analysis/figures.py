"""Paper-style figures from a benchmark CSV: metric histograms, maximum-cost
curves with fitted overlays, and the two-factor maximum surface."""

from __future__ import annotations

import logging
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from .data import METRICS, algorithms, max_series, max_surface
from .glm import FitError, select_degree

log = logging.getLogger("npvsched_analysis")

_METRIC_LABEL = {"comp_cost": "computational cost", "restarted": "restarted search"}


def render_figures(rows, out_dir):
    """Write the figure set; returns the list of files created.

    Missing groups are skipped with a warning rather than failing the run.
    """
    os.makedirs(out_dir, exist_ok=True)
    if not rows:
        log.warning("no usable rows; nothing to draw")
        return []
    created = []
    algos = algorithms(rows)
    for metric in METRICS:
        for algo in algos:
            sub = [r for r in rows if r["algorithm"] == algo]
            created += _histogram(sub, algo, metric, out_dir)
            created += _maxcost_curve(rows, sub, algo, metric, "vertices", out_dir)
            if metric == "comp_cost":
                created += _maxcost_curve(
                    rows, sub, algo, metric, "perc_neg_pct", out_dir
                )
                created += _surface(sub, algo, metric, out_dir)
    return created


def _histogram(sub, algo, metric, out_dir):
    values = [r[metric] for r in sub]
    if not values:
        log.warning("no %s rows for %s; histogram skipped", metric, algo)
        return []
    fig, ax = plt.subplots(figsize=(5, 3.2))
    ax.hist(values, bins=60, color="steelblue", edgecolor="none")
    ax.set_xlabel(_METRIC_LABEL[metric])
    ax.set_ylabel("frequency")
    ax.set_title(f"{algo}: {_METRIC_LABEL[metric]} distribution")
    path = os.path.join(out_dir, f"hist_{metric}_{algo}.png")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return [path]


def _maxcost_curve(rows, sub, algo, metric, factor, out_dir):
    xs, ys = max_series(sub, factor, metric)
    if len(xs) < 3:
        log.warning("not enough %s values for %s; curve skipped", factor, algo)
        return []
    fig, ax = plt.subplots(figsize=(5, 3.2))
    ax.scatter(xs, ys, s=14, color="gray", label="observed maxima")
    try:
        degree, fit = select_degree(rows, metric, factor, algo)
        if fit is not None:
            grid = np.linspace(min(xs), max(xs), 200)
            ax.plot(grid, fit.predict(grid), color="crimson",
                    label=f"NB fit, degree {degree}, D²={fit.d_squared:.2f}")
    except FitError as exc:
        log.warning("fit failed for %s/%s/%s: %s", algo, metric, factor, exc)
    ax.set_xlabel(factor)
    ax.set_ylabel(f"max {_METRIC_LABEL[metric]}")
    ax.set_title(f"{algo}: maximum {_METRIC_LABEL[metric]} by {factor}")
    ax.legend(fontsize=8)
    path = os.path.join(out_dir, f"maxcost_{metric}_{factor}_{algo}.png")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return [path]


def _surface(sub, algo, metric, out_dir):
    xs, ys, zs = max_surface(sub, "vertices", "perc_neg_pct", metric)
    if len(set(xs)) < 2 or len(set(ys)) < 2:
        log.warning("degenerate surface for %s; skipped", algo)
        return []
    fig = plt.figure(figsize=(5.5, 4))
    ax = fig.add_subplot(projection="3d")
    ax.plot_trisurf(xs, ys, zs, cmap="viridis", linewidth=0.1)
    ax.set_xlabel("vertices")
    ax.set_ylabel("percNeg")
    ax.set_zlabel(f"max {_METRIC_LABEL[metric]}")
    ax.set_title(f"{algo}: maximum {_METRIC_LABEL[metric]} surface")
    path = os.path.join(out_dir, f"surface_{metric}_{algo}.png")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return [path]

"""Factorial experiment runner and the preliminary statistics.

The CSV schema below is a fixed contract  (consumed by the separate model
fitting tooling); every run of an algorithm on an instance is one row.
"""

from __future__ import annotations

import csv
import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .algorithms import ALGORITHMS, solve
from .generator import generate_instance

log = logging.getLogger("npvsched")

CSV_HEADER = [
    "instance_id",
    "design",
    "vertices",
    "layers",
    "max_degree",
    "disc_rate_pct",
    "perc_neg_pct",
    "cp_mult",
    "edges",
    "algorithm",
    "direction",
    "npv",
    "comp_cost",
    "restarted",
    "wall_ms",
]

FACTOR_COLUMNS = (
    "vertices",
    "layers",
    "max_degree",
    "disc_rate_pct",
    "perc_neg_pct",
    "cp_mult",
    "edges",
)

# paper-style aliases accepted by the stats CLI
_FACTOR_ALIASES = {
    "discRate": "disc_rate_pct",
    "percNeg": "perc_neg_pct",
    "cpMult": "cp_mult",
    "maxDegree": "max_degree",
}

METRIC_COLUMNS = ("comp_cost", "restarted", "wall_ms")


@dataclass
class ExperimentRecord:
    """One (instance, algorithm) row of the factorial experiment."""

    instance_id: str
    design: int
    vertices: int
    layers: int
    max_degree: int
    disc_rate_pct: int
    perc_neg_pct: int
    cp_mult: float
    edges: int
    algorithm: str
    direction: str
    npv: float
    comp_cost: int
    restarted: int
    wall_ms: float
    error: str = ""

    def to_row(self):
        return [
            self.instance_id,
            self.design,
            self.vertices,
            self.layers,
            self.max_degree,
            self.disc_rate_pct,
            self.perc_neg_pct,
            self.cp_mult,
            self.edges,
            self.algorithm,
            self.direction,
            repr(self.npv),
            self.comp_cost,
            self.restarted,
            self.wall_ms,
        ]

    @classmethod
    def from_row(cls, row: dict) -> "ExperimentRecord":
        return cls(
            instance_id=row["instance_id"],
            design=int(row["design"]),
            vertices=int(row["vertices"]),
            layers=int(row["layers"]),
            max_degree=int(row["max_degree"]),
            disc_rate_pct=int(row["disc_rate_pct"]),
            perc_neg_pct=int(row["perc_neg_pct"]),
            cp_mult=float(row["cp_mult"]),
            edges=int(row["edges"]),
            algorithm=row["algorithm"],
            direction=row["direction"],
            npv=float(row["npv"]),
            comp_cost=int(row["comp_cost"]),
            restarted=int(row["restarted"]),
            wall_ms=float(row["wall_ms"]),
        )

    def factor(self, name: str):
        return getattr(self, _FACTOR_ALIASES.get(name, name))

    def metric(self, name: str):
        return getattr(self, _FACTOR_ALIASES.get(name, name))


def _solve_one(args):
    design, seed, index, algorithms = args
    net = generate_instance(design, seed, index)
    meta = net.meta
    rows = []
    for algo in algorithms:
        base = dict(
            instance_id=meta["instance_id"],
            design=design,
            vertices=meta["vertices"],
            layers=meta["layers"],
            max_degree=meta["max_degree"],
            disc_rate_pct=meta["disc_rate_pct"],
            perc_neg_pct=meta["perc_neg_pct"],
            cp_mult=meta["cp_mult"],
            edges=meta["edges"],
            algorithm=algo,
        )
        try:
            res = solve(net, algo)
            rows.append(
                ExperimentRecord(
                    direction=res.direction,
                    npv=res.npv,
                    comp_cost=res.metrics.computational_cost,
                    restarted=res.metrics.restarted_search,
                    wall_ms=res.metrics.wall_time_ms,
                    **base,
                )
            )
        except Exception as exc:  # flag the row, keep the batch going
            log.warning("solver %s failed on %s: %s", algo, meta["instance_id"], exc)
            rows.append(
                ExperimentRecord(
                    direction="",
                    npv=math.nan,
                    comp_cost=-1,
                    restarted=-1,
                    wall_ms=math.nan,
                    error=str(exc),
                    **base,
                )
            )
    return rows


def run_batch(design, count, seed, algorithms=ALGORITHMS, parallelism=None):
    """Generate ``count`` instances and solve each with every algorithm.

    Returns the records in deterministic (instance, algorithm) order; rows
    for failed solves are flagged with ``error`` and NaN metrics.
    """
    algorithms = [a.upper() for a in algorithms]
    for a in algorithms:
        if a not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {a!r}")
    tasks = [(design, seed, i, algorithms) for i in range(count)]
    records = []
    if parallelism is None:
        parallelism = os.cpu_count() or 1
    if parallelism > 1 and count > 1:
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            for rows in pool.map(_solve_one, tasks, chunksize=max(1, count // (8 * parallelism))):
                records.extend(rows)
    else:
        for t in tasks:
            records.extend(_solve_one(t))
    return records


def write_csv(records, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(CSV_HEADER)
        for r in records:
            w.writerow(r.to_row())


def read_csv(path):
    with open(path, newline="") as fh:
        return [ExperimentRecord.from_row(row) for row in csv.DictReader(fh)]


# -- summaries -------------------------------------------------------------------


def summarize(records, metric: str):
    """Six-number summary (min, Q1, median, mean, Q3, max) per algorithm.

    Quartiles use linear interpolation.  Empty groups are omitted with a
    warning.
    """
    groups = {}
    for r in records:
        groups.setdefault(r.algorithm, []).append(r.metric(metric))
    out = {}
    for algo in sorted(groups):
        vals = np.asarray(groups[algo], dtype=float)
        vals = vals[~np.isnan(vals)]
        if vals.size == 0:
            log.warning("summarize: no usable rows for %s", algo)
            continue
        q1, med, q3 = np.percentile(vals, [25, 50, 75])
        out[algo] = (
            float(vals.min()),
            float(q1),
            float(med),
            float(vals.mean()),
            float(q3),
            float(vals.max()),
        )
    return out


# -- two-sample Kolmogorov-Smirnov ------------------------------------------------


@dataclass(frozen=True)
class KsResult:
    statistic: float
    p_value: float
    similar: bool  # p > 0.05


def _kolmogorov_sf(t: float) -> float:
    """Asymptotic survival function 2*sum_k (-1)^(k-1) exp(-2 k^2 t^2)."""
    if t <= 0:
        return 1.0
    total = 0.0
    for k in range(1, 101):
        term = 2.0 * (-1.0) ** (k - 1) * math.exp(-2.0 * k * k * t * t)
        total += term
        if abs(term) < 1e-12:
            break
    return min(1.0, max(0.0, total))


def ks_two_sample(a, b, alpha: float = 0.05) -> KsResult:
    """Two-sample KS test with the asymptotic p-value.

    D is the sup distance between the two ECDFs; the p-value evaluates the
    Kolmogorov distribution at sqrt(na*nb/(na+nb)) * D.
    """
    a = np.sort(np.asarray(a, dtype=float))
    b = np.sort(np.asarray(b, dtype=float))
    if a.size == 0 or b.size == 0:
        raise ValueError("both samples must be nonempty")
    grid = np.concatenate([a, b])
    fa = np.searchsorted(a, grid, side="right") / a.size
    fb = np.searchsorted(b, grid, side="right") / b.size
    d = float(np.max(np.abs(fa - fb)))
    en = a.size * b.size / (a.size + b.size)
    p = _kolmogorov_sf(math.sqrt(en) * d)
    return KsResult(statistic=d, p_value=p, similar=p > alpha)


# -- Spearman rank correlation ----------------------------------------------------


def _midranks(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    order = np.argsort(x, kind="stable")
    ranks = np.empty(x.size, dtype=float)
    i = 0
    while i < x.size:
        j = i
        while j + 1 < x.size and x[order[j + 1]] == x[order[i]]:
            j += 1
        ranks[order[i : j + 1]] = 0.5 * (i + j) + 1.0  # average of ranks i+1..j+1
        i = j + 1
    return ranks


def spearman(x, y) -> float:
    """Pearson correlation of mid-ranks (ties averaged).

    Returns NaN when either argument has zero rank variance.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.size != y.size:
        raise ValueError("sequences must have equal length")
    if x.size < 2:
        raise ValueError("need at least two observations")
    rx = _midranks(x)
    ry = _midranks(y)
    sx = rx.std()
    sy = ry.std()
    if sx == 0 or sy == 0:
        return math.nan
    return float(((rx - rx.mean()) * (ry - ry.mean())).mean() / (sx * sy))


# -- conditional empirical maximum ------------------------------------------------


@dataclass
class MaxCostSeries:
    """Per factor value, the maximum metric value observed."""

    factor: str
    points: list  # [(factor value, max metric)] sorted by factor value

    def values(self):
        return [p[0] for p in self.points]

    def maxima(self):
        return [p[1] for p in self.points]


def max_cost_series(records, factor, metric, perc_neg_cap=None) -> MaxCostSeries:
    """Maximum of ``metric`` over the records sharing each factor value.

    ``perc_neg_cap`` drops records above the given negative-share percentage
    (the usual choice is 50, where the search direction flips).
    """
    column = _FACTOR_ALIASES.get(factor, factor)
    if column not in FACTOR_COLUMNS:
        raise ValueError(f"unknown factor {factor!r}")
    best = {}
    for r in records:
        if perc_neg_cap is not None and r.perc_neg_pct > perc_neg_cap:
            continue
        m = r.metric(metric)
        if isinstance(m, float) and math.isnan(m):
            continue
        v = r.factor(factor)
        if v not in best or m > best[v]:
            best[v] = m
    return MaxCostSeries(factor=factor, points=sorted(best.items()))

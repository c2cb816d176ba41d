"""Reader for the benchmark CSV contract.

The solver package writes one row per (instance, algorithm) with the fixed
header below; this package consumes nothing else from it.
"""

from __future__ import annotations

import csv
import math

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

FACTORS = ("vertices", "layers", "max_degree", "disc_rate_pct",
           "perc_neg_pct", "cp_mult", "edges")
METRICS = ("comp_cost", "restarted")


class Row(dict):
    __slots__ = ()


def read_results(path):
    """Parse a results CSV; numeric fields coerced, flagged rows dropped."""
    rows = []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        missing = [c for c in CSV_HEADER if c not in (reader.fieldnames or [])]
        if missing:
            raise ValueError(f"{path} lacks required columns: {missing}")
        for raw in reader:
            row = Row(raw)
            for key in ("design", "vertices", "layers", "max_degree",
                        "disc_rate_pct", "perc_neg_pct", "edges",
                        "comp_cost", "restarted"):
                row[key] = int(raw[key])
            for key in ("cp_mult", "npv", "wall_ms"):
                row[key] = float(raw[key])
            if row["comp_cost"] < 0 or math.isnan(row["npv"]):
                continue  # row was flagged by the harness
            rows.append(row)
    return rows


def algorithms(rows):
    return sorted({r["algorithm"] for r in rows})


def max_series(rows, factor, metric, perc_neg_cap=None):
    """Maximum of ``metric`` per distinct value of ``factor``.

    Returns (values, maxima) as parallel lists sorted by factor value.
    """
    if factor not in FACTORS:
        raise ValueError(f"unknown factor {factor!r}")
    best = {}
    for r in rows:
        if perc_neg_cap is not None and r["perc_neg_pct"] > perc_neg_cap:
            continue
        v = r[factor]
        m = r[metric]
        if v not in best or m > best[v]:
            best[v] = m
    pairs = sorted(best.items())
    return [p[0] for p in pairs], [p[1] for p in pairs]


def max_surface(rows, fx, fy, metric):
    """Maximum of ``metric`` per (fx, fy) cell; returns (xs, ys, maxima)."""
    best = {}
    for r in rows:
        key = (r[fx], r[fy])
        m = r[metric]
        if key not in best or m > best[key]:
            best[key] = m
    keys = sorted(best)
    return [k[0] for k in keys], [k[1] for k in keys], [best[k] for k in keys]

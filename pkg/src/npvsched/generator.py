"""Seeded random instance generator for the three experimental designs.

Designs 1 and 2 draw layered DAGs with capped vertex degrees (they differ
only in the vertex range); design 3 builds two-layer complete bipartite
digraphs that maximize the edge count.  Dummies close the network: the
initial dummy feeds every vertex without predecessors, every vertex without
successors feeds the final dummy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, asdict

import numpy as np

from .model import Activity, ProjectNetwork, critical_path_length, validate_network

VERTEX_RANGE = {1: (16, 80), 2: (16, 320), 3: (16, 320)}
DISC_RATE_RANGE = (1, 20)
CASH_FLOW_RANGE = (-100, 100)
ACTIVITY_DUR_RANGE = (5, 10)


@dataclass
class FactorAssignment:
    """One draw of the experimental factors."""

    design: int
    vertices: int
    layers: int
    max_degree: int
    disc_rate_pct: int
    perc_neg_pct: int
    cp_mult: float
    edges: int = 0  # derived, recorded after generation
    cash_flow_range: tuple = CASH_FLOW_RANGE
    activity_dur_range: tuple = ACTIVITY_DUR_RANGE

    def to_meta(self) -> dict:
        d = asdict(self)
        d["cash_flow_range"] = list(self.cash_flow_range)
        d["activity_dur_range"] = list(self.activity_dur_range)
        return d


def instance_rng(master_seed: int, index: int) -> np.random.Generator:
    """Independent deterministic stream for instance ``index``."""
    return np.random.default_rng(np.random.SeedSequence([int(master_seed), int(index)]))


def sample_factors(design: int, rng: np.random.Generator) -> FactorAssignment:
    """Uniform factor draw within the ranges of the given design."""
    if design not in (1, 2, 3):
        raise ValueError(f"design must be 1, 2 or 3, got {design}")
    lo, hi = VERTEX_RANGE[design]
    if design == 3:
        # two equal inner layers need an even count of real activities
        vertices = int(rng.integers(lo // 2, hi // 2 + 1)) * 2
        layers = 2
        max_degree = (vertices - 2) // 2
    else:
        vertices = int(rng.integers(lo, hi + 1))
        while True:
            layers = int(rng.integers(2, vertices))  # 2 .. vertices-1
            if layers <= vertices - 2:
                break  # degenerate draw (more layers than activities): resample
        max_degree = int(rng.choice([2, 3]))
    disc_rate = int(rng.integers(DISC_RATE_RANGE[0], DISC_RATE_RANGE[1] + 1))
    perc_cap = 5 if design == 3 else 10
    perc_neg = 10 * int(rng.integers(0, perc_cap + 1))
    cp_mult = float(rng.uniform(1.0, 2.0))
    return FactorAssignment(
        design=design,
        vertices=vertices,
        layers=layers,
        max_degree=max_degree,
        disc_rate_pct=disc_rate,
        perc_neg_pct=perc_neg,
        cp_mult=cp_mult,
    )


def assign_cash_flows(count, perc_neg_pct, rng, lo=-100, hi=100):
    """Integer cash flows with an exact count of negatives.

    ``round(perc_neg/100 * count)`` activities draw from [lo, -1], the rest
    from [1, hi]; exact halves round down so a 50% draw never flips the
    search direction.  Zero is excluded to keep the negative share exact.
    The order is randomized.
    """
    if not 0 <= perc_neg_pct <= 100:
        raise ValueError("perc_neg_pct must lie in 0..100")
    n_neg = math.ceil(count * perc_neg_pct / 100.0 - 0.5)
    flows = [int(rng.integers(lo, 0)) for _ in range(n_neg)]
    flows += [int(rng.integers(1, hi + 1)) for _ in range(count - n_neg)]
    rng.shuffle(flows)
    return flows


def _layer_sizes(count, layers, rng):
    # one activity per layer guarantees nonempty layers
    sizes = [1] * layers
    for _ in range(count - layers):
        sizes[int(rng.integers(layers))] += 1
    return sizes


def generate_network(factors: FactorAssignment, rng) -> ProjectNetwork:
    """Build one project network realizing a factor assignment.

    Layered designs place the real activities in ascending id order layer by
    layer, then add cross-layer edges (any earlier layer to any later layer)
    in a random order while both endpoint degrees stay within the cap.
    Design 3 connects the two inner layers completely.  The deadline is the
    critical path scaled by ``cp_mult`` and rounded to the nearest integer.
    """
    n = factors.vertices
    count = n - 2
    if factors.layers > count:
        raise ValueError(f"degenerate factors: {factors.layers} layers > {count}")
    sizes = (
        [count // 2, count // 2]
        if factors.design == 3
        else _layer_sizes(count, factors.layers, rng)
    )
    layer_of = [0] * (n + 1)
    v = 2
    for li, size in enumerate(sizes):
        for _ in range(size):
            layer_of[v] = li
            v += 1

    edges = []
    if factors.design == 3:
        split = 2 + sizes[0]
        for u in range(2, split):
            for w in range(split, n):
                edges.append((u, w))
    else:
        pairs = [
            (u, w)
            for u in range(2, n)
            for w in range(u + 1, n)
            if layer_of[u] < layer_of[w]
        ]
        out_deg = [0] * (n + 1)
        in_deg = [0] * (n + 1)
        cap = factors.max_degree
        for idx in rng.permutation(len(pairs)):
            u, w = pairs[idx]
            if out_deg[u] < cap and in_deg[w] < cap:
                edges.append((u, w))
                out_deg[u] += 1
                in_deg[w] += 1

    has_in = [False] * (n + 1)
    has_out = [False] * (n + 1)
    for u, w in edges:
        has_out[u] = True
        has_in[w] = True
    for v in range(2, n):
        if not has_in[v]:
            edges.append((1, v))
        if not has_out[v]:
            edges.append((v, n))

    dur_lo, dur_hi = factors.activity_dur_range
    durations = [0] + [int(rng.integers(dur_lo, dur_hi + 1)) for _ in range(count)] + [0]
    cf_lo, cf_hi = factors.cash_flow_range
    flows = [0.0] + assign_cash_flows(count, factors.perc_neg_pct, rng, cf_lo, cf_hi) + [0.0]

    acts = [Activity(i + 1, durations[i], flows[i]) for i in range(n)]
    net = ProjectNetwork(acts, edges, factors.disc_rate_pct, deadline=0)
    cp = critical_path_length(net)
    net.deadline = max(cp, int(round(factors.cp_mult * cp)))
    factors.edges = len(net.edges)
    net.meta = factors.to_meta()
    net.meta["layer_sizes"] = sizes

    problems = validate_network(net)
    if problems:
        raise RuntimeError(f"generator produced invalid network: {problems[0]}")
    return net


def generate_instance(design: int, master_seed: int, index: int) -> ProjectNetwork:
    """Deterministic instance: same (design, seed, index) -> identical JSON."""
    rng = instance_rng(master_seed, index)
    factors = sample_factors(design, rng)
    net = generate_network(factors, rng)
    net.meta["instance_id"] = f"d{design}-s{master_seed}-i{index:05d}"
    return net

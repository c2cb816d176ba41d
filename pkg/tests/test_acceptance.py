"""Acceptance gate: every criterion prints one PASS/FAIL line (run with -s).

The statistical criteria share one 2000-instance design-1 replication
(session fixture); the optimality criterion runs its own 500 small instances
against the exhaustive oracle.
"""

import time

import numpy as np
import pytest

from npvsched import ALGORITHMS, solve
from npvsched.bench import ks_two_sample, max_cost_series, run_batch, spearman, summarize
from npvsched.generator import generate_instance
from npvsched.oracle import OracleBudgetError, brute_force_optimal
from conftest import SAMPLE1_COUNT, small_instance


def _gate(name, ok, detail=""):
    print(f"{'PASS' if ok else 'FAIL'}: {name}" + (f"  [{detail}]" if detail else ""))
    assert ok, f"{name}: {detail}"


def test_oracle_optimality():
    t0 = time.perf_counter()
    checked = 0
    worst = 0.0
    index = 0
    while checked < 500:
        net = small_instance(index, seed=909090)
        index += 1
        try:
            best, _ = brute_force_optimal(net, budget=200_000)
        except OracleBudgetError:
            continue
        checked += 1
        for algo in ALGORITHMS:
            worst = max(worst, abs(solve(net, algo).npv - best))
    elapsed = time.perf_counter() - t0
    _gate(
        "oracle optimality (500 instances, n <= 10, all solvers within 1e-9)",
        worst <= 1e-9,
        f"max abs gap {worst:.2e}, {checked} instances, {elapsed:.1f}s",
    )
    _gate("oracle optimality runtime under 2 minutes", elapsed < 120.0, f"{elapsed:.1f}s")


def test_cross_algorithm_agreement(sample1_by_instance):
    worst = 0.0
    for group in sample1_by_instance.values():
        scale = max(1.0, abs(group["SAAFB"].npv))
        worst = max(
            worst,
            abs(group["RSFB"].npv - group["SAAFB"].npv) / scale,
            abs(group["SAAFB"].npv - group["HS"].npv) / scale,
            abs(group["RSFB"].npv - group["HS"].npv) / scale,
        )
    _gate(
        f"cross-algorithm agreement on {SAMPLE1_COUNT} design-1 instances (rel <= 1e-6)",
        worst <= 1e-6,
        f"max rel gap {worst:.2e}",
    )


def test_counter_identity():
    bad = 0
    runs = 0
    for idx in range(150):
        net = small_instance(idx, seed=808080)
        for algo in ALGORITHMS:
            m = solve(net, algo).metrics
            runs += 1
            if m.computational_cost != m.recursion_or_iteration + m.edge_checked:
                bad += 1
    _gate("counter identity comp_cost = calls + edges", bad == 0, f"{runs} runs")


def test_distribution_similarity(sample1_records):
    cost = {
        a: [r.comp_cost for r in sample1_records if r.algorithm == a]
        for a in ALGORITHMS
    }
    sa_hs = ks_two_sample(cost["SAAFB"], cost["HS"])
    rs_sa = ks_two_sample(cost["RSFB"], cost["SAAFB"])
    rs_hs = ks_two_sample(cost["RSFB"], cost["HS"])
    _gate(
        "KS: SAAFB vs HS computational cost similar (p > 0.05)",
        sa_hs.similar,
        f"D={sa_hs.statistic:.5f} p={sa_hs.p_value:.3g}",
    )
    _gate(
        "KS: RSFB vs SAAFB and RSFB vs HS dissimilar (p < 0.01)",
        rs_sa.p_value < 0.01 and rs_hs.p_value < 0.01,
        f"p={rs_sa.p_value:.2e}, {rs_hs.p_value:.2e}",
    )


def test_restart_dominance(sample1_records, sample1_by_instance):
    table = summarize(sample1_records, "restarted")
    _, _, med_rs, _, q3_rs, _ = table["RSFB"]
    _, _, med_sa, _, q3_sa, _ = table["SAAFB"]
    _, _, med_hs, _, q3_hs, _ = table["HS"]
    _gate(
        "restart dominance: RSFB median and Q3 strictly above SAAFB and HS",
        med_rs > med_sa and med_rs > med_hs and q3_rs > q3_sa and q3_rs > q3_hs,
        f"median {med_rs} vs {med_sa}/{med_hs}, Q3 {q3_rs} vs {q3_sa}/{q3_hs}",
    )
    mismatches = sum(
        1
        for g in sample1_by_instance.values()
        if g["SAAFB"].restarted != g["HS"].restarted
    )
    _gate(
        "restart identity: SAAFB and HS agree record-by-record",
        mismatches == 0,
        f"{mismatches} mismatching instances",
    )


def test_direction_rule(sample1_records):
    violations = [
        r
        for r in sample1_records
        if (r.perc_neg_pct > 50) != (r.direction == "backward")
    ]
    _gate(
        "direction rule: backward iff percNeg > 50, every record",
        not violations,
        f"{len(violations)} violations",
    )


def test_spearman_replication(sample1_records):
    rhos = {}
    for algo in ALGORITHMS:
        sub = [r for r in sample1_records if r.algorithm == algo]
        series = max_cost_series(sub, "vertices", "comp_cost")
        rhos[algo] = spearman(series.values(), series.maxima())
    _gate(
        "Spearman: rho(maxCost(vertices), vertices) >= 0.85 for every algorithm",
        all(rho >= 0.85 for rho in rhos.values()),
        ", ".join(f"{a}={rho:.3f}" for a, rho in rhos.items()),
    )


def test_monotone_improvement():
    violations = 0
    for idx in range(1000):
        net = generate_instance(1, 505050, idx)
        for algo in ALGORITHMS:
            trace = solve(net, algo, collect_npv_trace=True).npv_trace
            for a, b in zip(trace, trace[1:]):
                if b < a - 1e-9 * max(1.0, abs(a)):
                    violations += 1
    _gate(
        "monotone improvement: NPV never decreases across shifts (1000 instances)",
        violations == 0,
        f"{violations} violations",
    )


def test_scale_note_bipartite_stress():
    # plausibility note, not a primary criterion: the dense two-layer design
    # dominates the sparse one by a wide margin at matched vertex ranges
    s2 = run_batch(2, 120, 606060, ("SAAFB", "HS"), parallelism=2)
    s3 = run_batch(3, 40, 606060, ("SAAFB", "HS"), parallelism=2)
    ratios = {}
    for algo in ("SAAFB", "HS"):
        m2 = max(r.comp_cost for r in s2 if r.algorithm == algo)
        m3 = max(r.comp_cost for r in s3 if r.algorithm == algo)
        ratios[algo] = m3 / m2
    _gate(
        "scale note: dense-design max cost >= 50x sparse-design max cost",
        all(v >= 50 for v in ratios.values()),
        ", ".join(f"{a}={v:.0f}x" for a, v in ratios.items()),
    )

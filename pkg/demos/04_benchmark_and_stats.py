"""A miniature factorial experiment with the summary statistics.

Run:  python demos/04_benchmark_and_stats.py     (about half a minute)
"""

from npvsched.bench import (
    ks_two_sample,
    max_cost_series,
    run_batch,
    spearman,
    summarize,
)

records = run_batch(design=1, count=400, seed=90210, parallelism=2)
print(f"{len(records)} records (400 instances x 3 algorithms)\n")

print("computational cost, six-number summaries:")
print("  algo     min     q1    med   mean     q3    max")
for algo, row in summarize(records, "comp_cost").items():
    print("  " + algo.ljust(6) + " ".join(f"{v:6.0f}" for v in row))

print("\nrestarted search:")
for algo, row in summarize(records, "restarted").items():
    print("  " + algo.ljust(6) + " ".join(f"{v:6.1f}" for v in row))

cost = {a: [r.comp_cost for r in records if r.algorithm == a]
        for a in ("RSFB", "SAAFB", "HS")}
print("\ntwo-sample KS on computational cost:")
for a, b in (("RSFB", "SAAFB"), ("RSFB", "HS"), ("SAAFB", "HS")):
    res = ks_two_sample(cost[a], cost[b])
    verdict = "similar" if res.similar else "different"
    print(f"  {a} vs {b}: D={res.statistic:.4f} p={res.p_value:.3g} -> {verdict}")

print("\nmaximum cost by vertex count (the empirical growth curve) and its")
print("rank correlation with the vertex count:")
for algo in ("RSFB", "SAAFB", "HS"):
    sub = [r for r in records if r.algorithm == algo]
    series = max_cost_series(sub, "vertices", "comp_cost")
    rho = spearman(series.values(), series.maxima())
    head = ", ".join(f"{v}:{m}" for v, m in series.points[:4])
    print(f"  {algo}: rho={rho:.3f}   head of series: {head} ...")

"""End-to-end: benchmark CSV -> negative-binomial growth models -> figures.

Needs the companion analysis package installed (pip install -e ./analysis).

Run:  python demos/05_growth_models.py     (about a minute)
"""

import tempfile
from pathlib import Path

from npvsched.bench import run_batch, write_csv

try:
    from npvsched_analysis.data import read_results
    from npvsched_analysis.figures import render_figures
    from npvsched_analysis.glm import fitted_peak, select_degree
except ImportError:
    raise SystemExit("install the analysis package first: pip install -e ./analysis")

workdir = Path(tempfile.mkdtemp(prefix="npvsched_demo_"))
csv_path = workdir / "results.csv"
records = run_batch(design=1, count=1500, seed=777, parallelism=2)
write_csv(records, csv_path)
rows = read_results(csv_path)
print(f"benchmark CSV: {csv_path} ({len(rows)} rows)\n")

print("growth of the maximum computational cost in the vertex count:")
for algo in ("RSFB", "SAAFB", "HS"):
    degree, fit = select_degree(rows, "comp_cost", "vertices", algo)
    print(f"  {algo}: selected degree {degree}, D^2={fit.d_squared:.3f}")

print("\ninfluence of the negative cash-flow share:")
for algo in ("RSFB", "SAAFB", "HS"):
    degree, fit = select_degree(rows, "comp_cost", "perc_neg_pct", algo)
    print(f"  {algo}: degree {degree}, fitted peak near percNeg="
          f"{fitted_peak(fit):.0f} (costs fall off once the search flips "
          f"direction past 50)")

figures = render_figures(rows, workdir / "figures")
print(f"\n{len(figures)} figures written under {workdir / 'figures'}")

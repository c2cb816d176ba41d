"""Command line: fit the growth models of a benchmark CSV, emit figures.

    npvsched-analyze --in results.csv --models all --figures out/

Model reports go to stdout; figures (optional) to the given directory.
"""

from __future__ import annotations

import argparse
import logging
import sys

from .data import algorithms, read_results
from .figures import render_figures
from .glm import FitError, ModelSpec, fit_maxcost_model, fitted_peak, select_degree

log = logging.getLogger("npvsched_analysis")


def build_parser():
    p = argparse.ArgumentParser(prog="npvsched-analyze", description=__doc__)
    p.add_argument("--in", dest="infile", required=True, help="benchmark CSV")
    p.add_argument(
        "--models",
        default="all",
        choices=("all", "vertices", "percNeg", "two-factor", "none"),
        help="which growth models to fit and report",
    )
    p.add_argument("--figures", default=None, help="directory for figure output")
    return p


def _print_fit(fit, header):
    print(header)
    print(f"  D^2 = {fit.d_squared:.4f}   dispersion alpha = {fit.dispersion:.4g}")
    print(f"  {'term':<14} {'estimate':>10} {'std.err':>9} {'z':>8} {'p':>9}")
    for name, est, se, z, p in fit.terms:
        print(f"  {name:<14} {est:>10.4f} {se:>9.4f} {z:>8.2f} {p:>9.4f}")


def run_models(rows, which):
    failures = []
    for algo in algorithms(rows):
        for metric in ("comp_cost", "restarted"):
            if which in ("all", "vertices"):
                try:
                    degree, fit = select_degree(rows, metric, "vertices", algo)
                    if fit is None:
                        print(f"== {algo} {metric} ~ vertices: no significant trend")
                    else:
                        _print_fit(
                            fit,
                            f"== {algo} {metric} ~ poly(vertices, {degree})",
                        )
                except FitError as exc:
                    failures.append(f"{algo}/{metric}/vertices: {exc}")
            if metric == "comp_cost" and which in ("all", "percNeg"):
                try:
                    degree, fit = select_degree(rows, metric, "perc_neg_pct", algo)
                    if fit is None:
                        print(f"== {algo} {metric} ~ percNeg: no significant trend")
                    else:
                        _print_fit(
                            fit, f"== {algo} {metric} ~ poly(percNeg, {degree})"
                        )
                        print(f"  fitted peak at percNeg = {fitted_peak(fit):.1f}")
                except FitError as exc:
                    failures.append(f"{algo}/{metric}/percNeg: {exc}")
            if metric == "comp_cost" and which in ("all", "two-factor"):
                try:
                    kx, _ = select_degree(rows, metric, "vertices", algo)
                    ky, _ = select_degree(rows, metric, "perc_neg_pct", algo)
                    if kx and ky:
                        spec = ModelSpec(
                            metric=metric,
                            factors=("vertices", "perc_neg_pct"),
                            degrees=(kx, ky),
                        )
                        fit = fit_maxcost_model(rows, spec, algo)
                        _print_fit(
                            fit,
                            f"== {algo} {metric} ~ poly(vertices, {kx}) "
                            f"+ poly(percNeg, {ky})",
                        )
                except FitError as exc:
                    failures.append(f"{algo}/{metric}/two-factor: {exc}")
    for f in failures:
        print(f"FIT FAILURE: {f}", file=sys.stderr)
    return 0 if not failures else 3


def main(argv=None):
    logging.basicConfig(stream=sys.stderr, level=logging.WARNING)
    args = build_parser().parse_args(argv)
    try:
        rows = read_results(args.infile)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if not rows:
        print("error: no usable rows", file=sys.stderr)
        return 2
    rc = 0
    if args.models != "none":
        rc = run_models(rows, args.models)
    if args.figures:
        for path in render_figures(rows, args.figures):
            print(path)
    return rc


if __name__ == "__main__":
    sys.exit(main())

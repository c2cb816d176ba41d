"""Command line interface: generate / solve / bench / stats / oracle-check.

Machine-readable output goes to stdout, logs to stderr.  Exit codes: 0 on
success, 1 on usage errors, 2 on data errors (invalid instance, infeasible
deadline, oracle budget).
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys

from . import bench
from .algorithms import ALGORITHMS, solve
from .generator import generate_instance
from .model import InstanceError, ProjectNetwork, validate_network
from .oracle import OracleBudgetError, brute_force_optimal

log = logging.getLogger("npvsched")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _setup_logging() -> None:
    level = os.environ.get("NPV_SCHED_LOG", "error").lower()
    levels = {"error": logging.ERROR, "info": logging.INFO, "debug": logging.DEBUG}
    logging.basicConfig(
        stream=sys.stderr,
        level=levels.get(level, logging.ERROR),
        format="%(levelname)s %(name)s: %(message)s",
    )


def _load_instance(path: str) -> ProjectNetwork:
    try:
        with open(path) as fh:
            net = ProjectNetwork.from_json(fh.read())
    except OSError as exc:
        raise InstanceError(f"cannot read {path}: {exc}") from exc
    problems = validate_network(net)
    if problems:
        raise InstanceError(f"invalid instance {path}: {problems[0]}")
    return net


def _algo_list(text: str):
    algos = [a.strip().upper() for a in text.split(",") if a.strip()]
    for a in algos:
        if a not in ALGORITHMS:
            raise InstanceError(f"unknown algorithm {a!r}")
    return algos


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="npvsched", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", parents=[], help="write random instance files")
    g.add_argument("--design", type=int, required=True, choices=(1, 2, 3))
    g.add_argument("--count", type=int, required=True)
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--out", required=True, help="output directory")

    s = sub.add_parser("solve", help="solve one instance, print result JSON")
    s.add_argument("--algo", required=True, help="rsfb | saafb | hs")
    s.add_argument("--in", dest="infile", required=True)
    s.add_argument(
        "--direction",
        choices=("forward", "backward"),
        default=None,
        help="override the automatic direction choice (testing hook)",
    )

    b = sub.add_parser("bench", help="run a factorial batch, write CSV")
    b.add_argument("--design", type=int, required=True, choices=(1, 2, 3))
    b.add_argument("--count", type=int, required=True)
    b.add_argument("--seed", type=int, required=True)
    b.add_argument("--algos", default="rsfb,saafb,hs")
    b.add_argument("--out", required=True, help="output CSV path")
    b.add_argument("--parallelism", type=int, default=None)

    t = sub.add_parser("stats", help="report statistics over a bench CSV")
    t.add_argument("--in", dest="infile", required=True)
    t.add_argument(
        "--report", required=True, choices=("summary", "ks", "spearman", "maxcost")
    )
    t.add_argument("--metric", default="comp_cost", choices=("comp_cost", "restarted"))
    t.add_argument("--factor", default="vertices")
    t.add_argument(
        "--perc-neg-cap",
        type=int,
        default=None,
        help="drop records above this negative share (maxcost/spearman)",
    )

    o = sub.add_parser("oracle-check", help="compare every solver to brute force")
    o.add_argument("--in", dest="infile", required=True)
    o.add_argument("--budget", type=int, default=10_000_000)
    o.add_argument("--tol", type=float, default=1e-9)
    return p


def _cmd_generate(args) -> int:
    os.makedirs(args.out, exist_ok=True)
    for i in range(args.count):
        net = generate_instance(args.design, args.seed, i)
        path = os.path.join(args.out, f"{net.meta['instance_id']}.json")
        with open(path, "w") as fh:
            fh.write(net.to_json())
            fh.write("\n")
        print(path)
    return 0


def _cmd_solve(args) -> int:
    net = _load_instance(args.infile)
    res = solve(net, args.algo, direction=args.direction)
    print(json.dumps(res.to_dict(), indent=2))
    return 0


def _cmd_bench(args) -> int:
    algos = _algo_list(args.algos)
    records = bench.run_batch(
        args.design, args.count, args.seed, algos, parallelism=args.parallelism
    )
    bench.write_csv(records, args.out)
    failed = sum(1 for r in records if r.error)
    log.info("wrote %d records to %s (%d flagged)", len(records), args.out, failed)
    print(args.out)
    return 0


def _cmd_stats(args) -> int:
    records = bench.read_csv(args.infile)
    if not records:
        raise InstanceError(f"no records in {args.infile}")
    if args.report == "summary":
        table = bench.summarize(records, args.metric)
        print(f"# {args.metric}: min q1 median mean q3 max")
        for algo, row in table.items():
            print(algo, " ".join(f"{v:.6g}" for v in row))
    elif args.report == "ks":
        algos = sorted({r.algorithm for r in records})
        by_algo = {
            a: [r.metric(args.metric) for r in records if r.algorithm == a]
            for a in algos
        }
        print(f"# {args.metric}: pair D p similar")
        for i, a in enumerate(algos):
            for b in algos[i + 1 :]:
                res = bench.ks_two_sample(by_algo[a], by_algo[b])
                print(
                    f"{a} vs {b} {res.statistic:.5f} {res.p_value:.4g} "
                    f"{'yes' if res.similar else 'no'}"
                )
    elif args.report == "spearman":
        print(f"# rho of maxima of {args.metric} against each factor, per algorithm")
        algos = sorted({r.algorithm for r in records})
        for algo in algos:
            sub = [r for r in records if r.algorithm == algo]
            cells = []
            for factor in bench.FACTOR_COLUMNS:
                cap = args.perc_neg_cap if factor != "perc_neg_pct" else 50
                series = bench.max_cost_series(sub, factor, args.metric, cap)
                if len(series.points) < 2:
                    cells.append(f"{factor}=NA")
                    continue
                rho = bench.spearman(series.values(), series.maxima())
                cells.append(
                    f"{factor}={'NA' if math.isnan(rho) else format(rho, '.2f')}"
                )
            print(algo, " ".join(cells))
    elif args.report == "maxcost":
        algos = sorted({r.algorithm for r in records})
        for algo in algos:
            sub = [r for r in records if r.algorithm == algo]
            series = bench.max_cost_series(
                sub, args.factor, args.metric, args.perc_neg_cap
            )
            for value, peak in series.points:
                print(f"{algo} {args.factor}={value} max={peak:.6g}")
    return 0


def _cmd_oracle_check(args) -> int:
    net = _load_instance(args.infile)
    try:
        best, _ = brute_force_optimal(net, budget=args.budget)
    except OracleBudgetError as exc:
        raise InstanceError(str(exc)) from exc
    print(f"oracle {best!r}")
    worst = 0.0
    for algo in ALGORITHMS:
        res = solve(net, algo)
        gap = abs(res.npv - best)
        worst = max(worst, gap)
        print(f"{algo} {res.npv!r} gap {gap:.3g}")
    verdict = "PASS" if worst <= args.tol else "FAIL"
    print(verdict)
    return 0 if verdict == "PASS" else 2


def main(argv=None) -> int:
    _setup_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "generate": _cmd_generate,
        "solve": _cmd_solve,
        "bench": _cmd_bench,
        "stats": _cmd_stats,
        "oracle-check": _cmd_oracle_check,
    }
    try:
        return handlers[args.command](args)
    except (InstanceError, OracleBudgetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

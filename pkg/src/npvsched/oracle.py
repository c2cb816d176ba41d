"""Exhaustive optimum for small instances; ground truth for the solvers."""

from __future__ import annotations

import math

from .model import ProjectNetwork, Schedule, early_schedule, late_schedule


class OracleBudgetError(RuntimeError):
    """Enumeration domain exceeds the allowed budget."""


def brute_force_optimal(net: ProjectNetwork, budget: int = 10_000_000):
    """Enumerate every integer start vector between the CPM bounds.

    Sound because any feasible schedule lies componentwise between the early
    and late schedules.  Vertices are filled in ascending (topological) order
    with the precedence lower bound tightened on the fly; the final dummy is
    pinned to its lower bound since it carries no cash flow and ties break
    toward the lexicographically smallest vector.

    Returns ``(npv, Schedule)``.  Raises :class:`OracleBudgetError` when the
    raw domain size exceeds ``budget``.
    """
    n = net.n
    early, _ = early_schedule(net)
    late, _ = late_schedule(net)
    lo = [0]
    lo.extend(early.starts)
    hi = [0]
    hi.extend(late.starts)

    domain = 1
    for i in range(2, n):
        domain *= hi[i] - lo[i] + 1
        if domain > budget:
            raise OracleBudgetError(
                f"instance too large for oracle: domain exceeds budget {budget}"
            )

    alpha = net.alpha
    dur = net.dur
    cash = net.cash
    preds = net.pred

    starts = [0] * (n + 1)
    best_npv = -math.inf
    best = None

    def fill(j, acc):
        nonlocal best_npv, best
        if j == n:
            floor = lo[n]
            for p in preds[n]:
                f = starts[p] + dur[p]
                if f > floor:
                    floor = f
            if floor > hi[n]:
                return
            if acc > best_npv:
                starts[n] = floor
                best_npv = acc
                best = starts[1:]
                best = list(best)
            return
        floor = lo[j]
        for p in preds[j]:
            f = starts[p] + dur[p]
            if f > floor:
                floor = f
        for s in range(floor, hi[j] + 1):
            starts[j] = s
            fill(j + 1, acc + cash[j] * math.exp(-alpha * (s + dur[j])))

    fill(2, 0.0)
    if best is None:
        raise OracleBudgetError("no feasible schedule found (invalid instance)")
    return best_npv, Schedule(best)

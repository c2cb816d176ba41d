"""Project network data model, feasibility checks, NPV objective and CPM passes.

Conventions used throughout the package:

* Vertices are numbered 1..n and already sorted topologically; vertex 1 is
  the initial dummy, vertex n the final dummy (duration 0, cash flow 0).
* Every activity pays its cash flow at its finish time and is discounted
  continuously: a flow c maturing at time t is worth ``c * exp(-alpha * t)``
  with ``alpha = ln(1 + r/100)`` for a discount rate of r percent.
* Internal arrays are 1-based (index 0 is unused padding) so that code reads
  like the underlying math; public containers (``Schedule.starts``, JSON
  files) are plain length-n lists with vertex i at position i-1.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field


class InstanceError(ValueError):
    """Raised for malformed networks, schedules or instance files."""


class DeadlineInfeasibleError(InstanceError):
    """Deadline is shorter than the critical path."""


@dataclass(frozen=True)
class Activity:
    """One project activity (vertex)."""

    id: int
    duration: int
    cash_flow: float

    @property
    def is_dummy(self) -> bool:
        return self.duration == 0 and self.cash_flow == 0


@dataclass(frozen=True)
class Schedule:
    """Vector of integer start times, vertex i at ``starts[i-1]``."""

    starts: tuple

    def __init__(self, starts):
        object.__setattr__(self, "starts", tuple(int(s) for s in starts))

    def start(self, vertex: int) -> int:
        return self.starts[vertex - 1]

    def __len__(self) -> int:
        return len(self.starts)


class SpanningTree:
    """Mutable spanning tree over the vertices of a project network.

    Edges are directed pairs and normally mark binding precedence
    constraints.  The closing edge between the dummies (used by the
    recursive solver so the deadline bounds every shift) is tracked by
    ``extra_edge_present``.
    """

    __slots__ = ("n", "succ", "pred", "role", "extra_edge_present")

    def __init__(self, n: int, role: str = "ST"):
        self.n = n
        self.succ = [set() for _ in range(n + 1)]
        self.pred = [set() for _ in range(n + 1)]
        self.role = role
        self.extra_edge_present = False

    def add_edge(self, i: int, j: int) -> None:
        self.succ[i].add(j)
        self.pred[j].add(i)

    def remove_edge(self, i: int, j: int) -> None:
        self.succ[i].discard(j)
        self.pred[j].discard(i)

    def has_edge(self, i: int, j: int) -> bool:
        return j in self.succ[i]

    def edges(self):
        for i in range(1, self.n + 1):
            for j in self.succ[i]:
                yield (i, j)

    def edge_count(self) -> int:
        return sum(len(s) for s in self.succ[1:])

    def copy(self) -> "SpanningTree":
        t = SpanningTree(self.n, role=self.role)
        t.succ = [set(s) for s in self.succ]
        t.pred = [set(p) for p in self.pred]
        t.extra_edge_present = self.extra_edge_present
        return t


class ProjectNetwork:
    """Activity-on-node DAG with durations, cash flows, discount rate, deadline."""

    def __init__(self, activities, edges, discount_rate_pct, deadline, meta=None):
        acts = sorted(activities, key=lambda a: a.id)
        self.n = len(acts)
        self.activities = acts
        # 1-based arrays; index 0 unused.
        self.dur = [0] + [a.duration for a in acts]
        self.cash = [0.0] + [float(a.cash_flow) for a in acts]
        self.succ = [[] for _ in range(self.n + 1)]
        self.pred = [[] for _ in range(self.n + 1)]
        self.edges = sorted(set((int(i), int(j)) for i, j in edges))
        for i, j in self.edges:
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise InstanceError(f"edge ({i},{j}) references unknown vertex")
            self.succ[i].append(j)
            self.pred[j].append(i)
        for lst in self.succ:
            lst.sort()
        for lst in self.pred:
            lst.sort()
        self.discount_rate_pct = float(discount_rate_pct)
        self.deadline = int(deadline)
        self.meta = dict(meta) if meta else {}

    @property
    def alpha(self) -> float:
        """Continuous discount exponent, ln(1 + r/100)."""
        return math.log(1.0 + self.discount_rate_pct / 100.0)

    def non_dummies(self):
        return range(2, self.n)

    # -- instance file format -------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "durations": self.dur[1:],
            "cash_flows": self.cash[1:],
            "edges": [list(e) for e in self.edges],
            "discount_rate_pct": self.discount_rate_pct,
            "deadline": self.deadline,
            "meta": self.meta,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, d: dict) -> "ProjectNetwork":
        try:
            n = int(d["n"])
            durations = d["durations"]
            cash_flows = d["cash_flows"]
            edges = d["edges"]
            rate = d["discount_rate_pct"]
            deadline = d["deadline"]
        except (KeyError, TypeError) as exc:
            raise InstanceError(f"instance file missing field: {exc}") from exc
        if len(durations) != n or len(cash_flows) != n:
            raise InstanceError("durations/cash_flows length does not match n")
        acts = [
            Activity(i + 1, int(durations[i]), float(cash_flows[i])) for i in range(n)
        ]
        return cls(acts, edges, rate, deadline, meta=d.get("meta"))

    @classmethod
    def from_json(cls, text: str) -> "ProjectNetwork":
        try:
            d = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InstanceError(f"invalid instance JSON: {exc}") from exc
        return cls.from_dict(d)


def chain_network(durations, cash_flows, discount_rate_pct=0.0, deadline=None):
    """Convenience constructor: 1 -> 2 -> ... -> n with the given attributes."""
    n = len(durations)
    acts = [Activity(i + 1, durations[i], cash_flows[i]) for i in range(n)]
    edges = [(i, i + 1) for i in range(1, n)]
    net = ProjectNetwork(acts, edges, discount_rate_pct, deadline or 0)
    if deadline is None:
        net.deadline = critical_path_length(net)
    return net


# -- validation ----------------------------------------------------------------


def validate_network(net: ProjectNetwork):
    """Check the structural invariants of a project network.

    Returns a list of violation strings; an empty list means the network is
    well formed.  Violations are data, not exceptions.
    """
    v = []
    n = net.n
    if n < 2:
        return [f"network needs at least the two dummies, got n={n}"]
    for i, j in net.edges:
        if i >= j:
            v.append(f"edge ({i},{j}) breaks ascending order (cycle)")
        if i == j:
            v.append(f"edge ({i},{j}) is a self-loop (cycle)")
    for d in (1, n):
        if net.dur[d] != 0:
            v.append(f"dummy {d} has nonzero duration {net.dur[d]}")
        if net.cash[d] != 0:
            v.append(f"dummy {d} has nonzero cash flow {net.cash[d]}")
    for i in range(1, n + 1):
        if net.dur[i] < 0:
            v.append(f"vertex {i} has negative duration {net.dur[i]}")
    for i in range(2, n + 1):
        if not net.pred[i]:
            v.append(f"vertex {i} has no predecessor (vertex 1 not unique source)")
    for i in range(1, n):
        if not net.succ[i]:
            v.append(f"vertex {i} has no successor (vertex {n} not unique sink)")
    # Reachability both ways; with ascending edges a simple sweep suffices.
    from_source = [False] * (n + 1)
    from_source[1] = True
    for i in range(1, n + 1):
        if from_source[i]:
            for j in net.succ[i]:
                if j > i:
                    from_source[j] = True
    to_sink = [False] * (n + 1)
    to_sink[n] = True
    for i in range(n, 0, -1):
        if to_sink[i]:
            for p in net.pred[i]:
                if p < i:
                    to_sink[p] = True
    for i in range(2, n):
        if not (from_source[i] and to_sink[i]):
            v.append(f"vertex {i} not on a 1->{n} path")
    if not v:
        cp = critical_path_length(net)
        if net.deadline < cp:
            v.append(f"deadline {net.deadline} below critical path {cp}")
    return v


def is_feasible(net: ProjectNetwork, sched: Schedule):
    """Check a schedule against the precedence, release, deadline and
    integrality constraints.

    Returns ``(ok, first_violation_or_None)``.
    """
    if len(sched) != net.n:
        raise InstanceError(
            f"shape error: schedule has {len(sched)} starts for n={net.n}"
        )
    s = sched.starts
    if s[0] != 0:
        return False, f"s_1 = {s[0]} != 0"
    for i in range(net.n):
        if s[i] < 0:
            return False, f"s_{i + 1} = {s[i]} negative"
    for i, j in net.edges:
        if s[i - 1] + net.dur[i] > s[j - 1]:
            return False, (
                f"edge ({i},{j}): finish {s[i - 1] + net.dur[i]} > start {s[j - 1]}"
            )
    if s[net.n - 1] > net.deadline:
        return False, f"s_n = {s[net.n - 1]} exceeds deadline {net.deadline}"
    return True, None


# -- objective -------------------------------------------------------------------


def npv(net: ProjectNetwork, sched: Schedule) -> float:
    """Net present value of a feasible schedule.

    Dummies contribute nothing; activity i contributes
    ``c_i * exp(-alpha * (s_i + d_i))``.
    """
    ok, why = is_feasible(net, sched)
    if not ok:
        raise InstanceError(f"infeasible input: {why}")
    return npv_unchecked(net, sched.starts)


def npv_unchecked(net: ProjectNetwork, starts) -> float:
    a = net.alpha
    total = 0.0
    for i in net.non_dummies():
        total += net.cash[i] * math.exp(-a * (starts[i - 1] + net.dur[i]))
    return total


# -- CPM passes -------------------------------------------------------------------


def critical_path_length(net: ProjectNetwork) -> int:
    """Longest 1->n path duration."""
    est = _early_starts(net)
    return est[net.n]


def _early_starts(net: ProjectNetwork):
    est = [0] * (net.n + 1)
    for j in range(2, net.n + 1):
        best = 0
        for p in net.pred[j]:
            f = est[p] + net.dur[p]
            if f > best:
                best = f
        est[j] = best
    return est


def early_schedule(net: ProjectNetwork, with_extra_edge: bool = False):
    """CPM forward pass: every start minimal.

    Returns ``(Schedule, SpanningTree)``.  The tree holds, for every vertex
    j > 1, the first binding predecessor edge in ascending vertex order; when
    ``with_extra_edge`` is set the closing edge (1, n) is added as well.
    """
    est = _early_starts(net)
    tree = SpanningTree(net.n, role="ET")
    for j in range(2, net.n + 1):
        for p in net.pred[j]:
            if est[p] + net.dur[p] == est[j]:
                tree.add_edge(p, j)
                break
        else:
            raise InstanceError(f"vertex {j} has no predecessor")
    if with_extra_edge:
        tree.add_edge(1, net.n)
        tree.extra_edge_present = True
    return Schedule(est[1:]), tree


def late_schedule(net: ProjectNetwork, with_extra_edge: bool = False):
    """CPM backward pass anchored at the deadline: every start maximal.

    The initial dummy stays pinned at 0.  The tree holds one binding
    successor edge per vertex; when the dummy source has none (positive
    slack everywhere) it is attached through the closing edge (1, n).
    """
    cp = critical_path_length(net)
    if net.deadline < cp:
        raise DeadlineInfeasibleError(
            f"deadline infeasible: {net.deadline} < critical path {cp}"
        )
    n = net.n
    lst = [0] * (n + 1)
    lst[n] = net.deadline
    for i in range(n - 1, 1, -1):
        lst[i] = min(lst[j] for j in net.succ[i]) - net.dur[i]
    lst[1] = 0
    tree = SpanningTree(n, role="LT")
    for i in range(2, n):
        for j in net.succ[i]:
            if lst[i] + net.dur[i] == lst[j]:
                tree.add_edge(i, j)
                break
        else:
            raise InstanceError(f"vertex {i} has no successor")
    source_bound = False
    for j in net.succ[1]:
        if lst[j] == 0:
            tree.add_edge(1, j)
            source_bound = True
            break
    if with_extra_edge or not source_bound:
        tree.add_edge(1, n)
        tree.extra_edge_present = True
    return Schedule(lst[1:]), tree

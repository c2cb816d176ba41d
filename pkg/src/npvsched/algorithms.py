"""The three exact max-NPV solvers and their shared shortest-shift primitive.

All three algorithms walk a spanning tree of binding precedence constraints,
pick out vertex sets whose displacement increases the objective, and move each
set by the smallest feasible distance:

* ``rsfb_solve`` -- depth-first search that displaces one subtree at a time
  and restarts from scratch after every displacement.
* ``saafb_solve`` -- iterative tree contraction that classifies whole groups
  by the gradient of the discounted cash flow, then displaces them batchwise.
* ``hs_solve`` -- depth-first search like the first, but collecting every
  candidate subtree of a pass before displacing any of them.

Every solver runs either forward (from the early schedule, delaying sets with
negative discounted cash) or backward (from the late schedule, advancing sets
with positive discounted cash); the direction flips when more than half of the
real activities have negative cash flow.

Instrumentation mirrors the cost model used by the benchmark harness: one
count per logical recursive call or contraction iteration, one count per edge
examined while searching for the nearest constraint, and one count per search
restart.  ``computational_cost`` is always the exact sum of the first two.
"""

from __future__ import annotations

import heapq
import math
import time
from dataclasses import dataclass, field

import numpy as np

from .model import (
    DeadlineInfeasibleError,
    ProjectNetwork,
    Schedule,
    critical_path_length,
    early_schedule,
    is_feasible,
    late_schedule,
    npv_unchecked,
)

FORWARD = "forward"
BACKWARD = "backward"

RSFB = "RSFB"
SAAFB = "SAAFB"
HS = "HS"
ALGORITHMS = (RSFB, SAAFB, HS)

# Sign tests on discounted cash / gradients; avoids flapping near zero.
_TOL = 1e-12


class SolverError(RuntimeError):
    """A solver violated one of its own invariants (always a bug)."""


class UnboundedShiftError(SolverError):
    """No boundary constraint bounds a requested displacement."""


@dataclass
class RunMetrics:
    """Instrumentation counters of one solver run."""

    recursion_or_iteration: int = 0
    edge_checked: int = 0
    restarted_search: int = 0
    wall_time_ms: float = 0.0

    @property
    def computational_cost(self) -> int:
        return self.recursion_or_iteration + self.edge_checked

    def to_dict(self) -> dict:
        return {
            "recursion_or_iteration": self.recursion_or_iteration,
            "edge_checked": self.edge_checked,
            "restarted_search": self.restarted_search,
            "computational_cost": self.computational_cost,
            "wall_time_ms": self.wall_time_ms,
        }


@dataclass
class SolverResult:
    algorithm: str
    direction: str
    npv: float
    schedule: Schedule
    metrics: RunMetrics
    npv_trace: list = field(default=None, repr=False)

    def to_dict(self) -> dict:
        return {
            "algorithm": self.algorithm,
            "direction": self.direction,
            "npv": self.npv,
            "starts": list(self.schedule.starts),
            "metrics": self.metrics.to_dict(),
        }


def choose_direction(net: ProjectNetwork) -> str:
    """Backward iff strictly more than half of the real activities have
    negative cash flow; ties go forward."""
    negatives = sum(1 for i in net.non_dummies() if net.cash[i] < 0)
    return BACKWARD if 2 * negatives > net.n - 2 else FORWARD


def _compute_v_core(net, s, moving, forward):
    """Smallest feasible displacement of ``moving`` away from its anchor.

    Forward scans the graph successors of every moving vertex (the deadline
    stands in as the successor of the final dummy); backward scans the
    predecessors.  Each examined edge counts once.  Ties keep the first
    candidate in ascending (vertex, neighbour) order.

    Returns ``(k, l, v, edges_examined)`` with k in the moving set, l outside
    it (l = 1 marks the deadline bound), and v >= 0.
    """
    if len(moving) >= 48:
        return _compute_v_bulk(net, s, moving, forward)
    dur = net.dur
    n = net.n
    deadline = net.deadline
    best_v = deadline + 1  # sentinel above any feasible shift
    best_k = best_l = 0
    examined = 0
    for node in sorted(moving):
        if forward:
            s_node = s[node] + dur[node]
            for suc in net.succ[node]:
                examined += 1
                if suc in moving:
                    continue
                slack = s[suc] - s_node
                if slack < best_v:
                    best_v, best_k, best_l = slack, node, suc
            if node == n:
                examined += 1
                slack = deadline - s_node
                if slack < best_v:
                    best_v, best_k, best_l = slack, n, 1
        else:
            s_node = s[node]
            for pre in net.pred[node]:
                examined += 1
                if pre in moving:
                    continue
                slack = s_node - s[pre] - dur[pre]
                if slack < best_v:
                    best_v, best_k, best_l = slack, node, pre
    if best_k == 0:
        raise UnboundedShiftError("unbounded shift: moving set has no boundary")
    if best_v < 0:
        raise SolverError(f"negative slack {best_v} at edge ({best_k},{best_l})")
    return best_k, best_l, best_v, examined


def _adjacency_arrays(net):
    arrs = getattr(net, "_flat_adj", None)
    if arrs is None:
        succ = [np.asarray(a, dtype=np.int64) for a in net.succ]
        pred = [np.asarray(a, dtype=np.int64) for a in net.pred]
        dur = np.asarray(net.dur, dtype=np.int64)
        arrs = (succ, pred, dur)
        net._flat_adj = arrs
    return arrs


def _compute_v_bulk(net, s, moving, forward):
    """Vectorized twin of the scalar scan above; identical results (integer
    slacks, first-occurrence tie break follows the same candidate order)."""
    succ, pred, dvec = _adjacency_arrays(net)
    adj = succ if forward else pred
    n = net.n
    deadline = net.deadline
    sentinel = deadline + 1
    nodes = sorted(moving)
    parts = [adj[v] for v in nodes]
    counts = np.array([p.size for p in parts], dtype=np.int64)
    examined = int(counts.sum())
    svec = np.asarray(s, dtype=np.int64)
    best_v = sentinel
    best_k = best_l = 0
    if examined:
        cand = np.concatenate(parts)
        node_rep = np.repeat(np.asarray(nodes, dtype=np.int64), counts)
        if forward:
            slack = svec[cand] - (svec[node_rep] + dvec[node_rep])
        else:
            slack = svec[node_rep] - (svec[cand] + dvec[cand])
        inz = np.zeros(n + 1, dtype=bool)
        inz[nodes] = True
        slack = np.where(inz[cand], sentinel, slack)
        i = int(np.argmin(slack))
        if slack[i] < sentinel:
            best_v = int(slack[i])
            best_k = int(node_rep[i])
            best_l = int(cand[i])
    if forward and n in moving:
        examined += 1
        wrap = deadline - (s[n] + net.dur[n])
        if wrap < best_v:
            best_v, best_k, best_l = wrap, n, 1
    if best_k == 0:
        raise UnboundedShiftError("unbounded shift: moving set has no boundary")
    if best_v < 0:
        raise SolverError(f"negative slack {best_v} at edge ({best_k},{best_l})")
    return best_k, best_l, best_v, examined


def compute_v(net, moving_set, schedule, direction=FORWARD, metrics=None):
    """Public wrapper over the shortest-shift search.

    ``moving_set`` holds 1-based vertex ids; ``schedule`` the current starts.
    Returns ``(k, l, v)``; if ``metrics`` is given its edge counter is
    advanced by the number of edges examined.
    """
    s = [0]
    s.extend(schedule.starts)
    k, l, v, examined = _compute_v_core(
        net, s, frozenset(moving_set), direction == FORWARD
    )
    if metrics is not None:
        metrics.edge_checked += examined
    return k, l, v


class _RunState:
    """Mutable per-run search state: schedule, discounted cash, tree, counters."""

    def __init__(self, net, algorithm, direction, collect_npv_trace=False):
        if direction not in (None, FORWARD, BACKWARD):
            raise ValueError(f"unknown direction {direction!r}")
        self.net = net
        self.n = net.n
        self.alpha = net.alpha
        self.algorithm = algorithm
        self.direction = direction or choose_direction(net)
        self.forward = self.direction == FORWARD
        cp = critical_path_length(net)
        if net.deadline < cp:
            raise DeadlineInfeasibleError(
                f"deadline infeasible: {net.deadline} < critical path {cp}"
            )
        self.metrics = RunMetrics()
        self.npv_trace = [] if collect_npv_trace else None
        self._t0 = time.perf_counter()
        self.s = None
        self.dc = None
        self.tree = None
        # zero-length reorientations already performed since the last strict
        # improvement; repeating one would cycle forever
        self.zero_shift_memo = set()

    def load(self, sched: Schedule, tree) -> None:
        self.s = [0]
        self.s.extend(sched.starts)
        a = self.alpha
        net = self.net
        self.dc = [0.0] * (self.n + 1)
        for i in range(2, self.n):
            self.dc[i] = net.cash[i] * math.exp(-a * (self.s[i] + net.dur[i]))
        self.tree = tree
        if self.npv_trace is not None:
            self.npv_trace.append(math.fsum(self.dc[2 : self.n]))

    # -- displacement machinery ------------------------------------------------

    def compute_v(self, moving):
        mset = moving if isinstance(moving, (set, frozenset)) else frozenset(moving)
        k, l, v, examined = _compute_v_core(self.net, self.s, mset, self.forward)
        self.metrics.edge_checked += examined
        return k, l, v

    def apply_shift(self, members, v) -> None:
        if v:
            delta = v if self.forward else -v
            fac = math.exp(-self.alpha * delta)
            s = self.s
            dc = self.dc
            for m in members:
                s[m] += delta
                dc[m] *= fac
            self.zero_shift_memo.clear()
        if self.npv_trace is not None:
            self.npv_trace.append(math.fsum(self.dc[2 : self.n]))

    def reattach(self, k, l) -> None:
        if not self.forward:
            self.tree.add_edge(l, k)
        elif k == self.n and l == 1:
            # Deadline bound won: re-anchor the final dummy on the considered
            # side so the moved set cannot be picked up again next pass.
            self.tree.remove_edge(1, self.n)
            self.tree.add_edge(self.n, 1)
        else:
            self.tree.add_edge(k, l)

    def result(self) -> SolverResult:
        sched = Schedule(self.s[1:])
        ok, why = is_feasible(self.net, sched)
        if not ok:
            raise SolverError(f"{self.algorithm} produced infeasible schedule: {why}")
        self.metrics.wall_time_ms = (time.perf_counter() - self._t0) * 1000.0
        return SolverResult(
            algorithm=self.algorithm,
            direction=self.direction,
            npv=npv_unchecked(self.net, sched.starts),
            schedule=sched,
            metrics=self.metrics,
            npv_trace=self.npv_trace,
        )


def _collect_subtrees(st: _RunState):
    """One depth-first pass over the tree from the anchored dummy.

    Every vertex entered counts as one logical recursive call.  A subtree
    reached through a detach-direction edge whose accumulated discounted cash
    has the improving sign is cut loose and queued; the pass continues and
    returns the list of queued vertex sets.

    A backward subtree containing the initial dummy is pinned (its start is
    fixed at zero by the release constraint) and is merged whatever its cash.
    """
    n = st.n
    fwd = st.forward
    tree = st.tree
    detach_adj = tree.succ if fwd else tree.pred
    merge_adj = tree.pred if fwd else tree.succ
    visited = bytearray(n + 1)
    detached = bytearray(n + 1)
    order = []
    collected = []
    metrics = st.metrics
    dc = st.dc

    def enter(v):
        metrics.recursion_or_iteration += 1
        visited[v] = 1
        pinned = (not fwd) and v == 1
        frame = [v, 0, sorted(detach_adj[v]), 0, dc[v], len(order), pinned]
        order.append(v)
        return frame

    root = 1 if fwd else n
    stack = [enter(root)]
    while stack:
        fr = stack[-1]
        snap = fr[2]
        if fr[3] < len(snap):
            child = snap[fr[3]]
            fr[3] += 1
            if not visited[child]:
                stack.append(enter(child))
            continue
        if fr[1] == 0:
            fr[1] = 1
            fr[2] = sorted(merge_adj[fr[0]])
            fr[3] = 0
            continue
        stack.pop()
        if not stack:
            break
        parent = stack[-1]
        child_dc = fr[4]
        if fr[6]:
            parent[6] = True
        if parent[1] == 0 and not fr[6] and (
            (child_dc < -_TOL) if fwd else (child_dc > _TOL)
        ):
            p, c = parent[0], fr[0]
            if fwd:
                tree.remove_edge(p, c)
            else:
                tree.remove_edge(c, p)
            members = [u for u in order[fr[5] :] if not detached[u]]
            for u in members:
                detached[u] = 1
            collected.append(members)
        else:
            parent[4] += child_dc
    return collected


def _drain(st: _RunState, sets) -> None:
    """Displace every queued set, nearest-bound first.

    Each round finds the globally shortest shift over the union of the
    remaining sets, moves the whole set owning that bound, and binds it to the
    constraint it now abuts.
    """
    owner = {}
    zset = set()
    for gi, members in enumerate(sets):
        for m in members:
            owner[m] = gi
            zset.add(m)
    for _ in range(len(sets)):
        k, l, v = st.compute_v(zset)
        members = sets[owner[k]]
        st.apply_shift(members, v)
        zset.difference_update(members)
        st.reattach(k, l)
    if zset:
        raise SolverError("displacement queue did not drain")


def _restart_guard(net) -> int:
    # far above any observed restart count; only a genuine cycle trips it
    return 1000 + 100 * net.n


# -- RSFB ------------------------------------------------------------------------


def _rsfb_search(st: _RunState) -> None:
    """The restarted recursive search with its double-stacked control flow.

    Each displacement starts a fresh pass immediately (one restart count, a
    reset considered-set, a full walk from the anchored dummy).  The
    suspended ancestor frames of older passes resume afterwards and deliver
    their partial subtree sums upward, so an ancestor can displace again on a
    sum that went stale meanwhile -- this cascade is where the bulk of the
    algorithm's restarts comes from.  Stale sums are revalidated against the
    current discounted cash before displacing (a set whose sign flipped while
    inner passes moved its members is merged instead; shifting it would lower
    the objective).

    Frame layout: [vertex, stage, snapshot, index, dc_sum, members, pinned,
    pass_root].  A pass root reports to nobody; every other frame merges into
    its parent unless displaced.
    """
    n = st.n
    fwd = st.forward
    tree = st.tree
    detach_adj = tree.succ if fwd else tree.pred
    merge_adj = tree.pred if fwd else tree.succ
    metrics = st.metrics
    guard = _restart_guard(st.net)
    root = 1 if fwd else n
    generation = 0
    visited = [0] * (n + 1)

    def enter(v, pass_root=False):
        metrics.recursion_or_iteration += 1
        visited[v] = generation
        pinned = (not fwd) and v == 1
        return [v, 0, sorted(detach_adj[v]), 0, st.dc[v], [v], pinned, pass_root]

    def fresh_pass():
        nonlocal generation
        metrics.restarted_search += 1
        if metrics.restarted_search > guard:
            raise SolverError("search did not converge (restart guard tripped)")
        generation += 1
        return enter(root, pass_root=True)

    stack = [fresh_pass()]
    while stack:
        fr = stack[-1]
        snap = fr[2]
        if fr[3] < len(snap):
            child = snap[fr[3]]
            fr[3] += 1
            if visited[child] != generation:
                stack.append(enter(child))
            continue
        if fr[1] == 0:
            fr[1] = 1
            fr[2] = sorted(merge_adj[fr[0]])
            fr[3] = 0
            continue
        stack.pop()
        if fr[7] or not stack:
            continue  # a completed pass reports to nobody
        parent = stack[-1]
        if fr[6]:
            parent[6] = True
        displace = False
        move = None
        if parent[1] == 0 and not fr[6]:
            stale = fr[4]
            if (stale < -_TOL) if fwd else (stale > _TOL):
                # resumed frames may have re-collected vertices an older pass
                # already banked: displacement works on the deduplicated set
                members = sorted(set(fr[5]))
                current = math.fsum(st.dc[m] for m in members)
                if (current < -_TOL) if fwd else (current > _TOL):
                    k, l, v = st.compute_v(frozenset(members))
                    # a zero-length displacement only reorients the tree;
                    # that restructuring matters, but repeating it for the
                    # same set without progress in between cycles forever
                    if v > 0:
                        displace = True
                    else:
                        sig = tuple(members)
                        if sig not in st.zero_shift_memo:
                            st.zero_shift_memo.add(sig)
                            displace = True
                    if displace:
                        move = (members, k, l, v)
        if displace:
            members, k, l, v = move
            p, c = parent[0], fr[0]
            if fwd:
                tree.remove_edge(p, c)
            else:
                tree.remove_edge(c, p)
            st.apply_shift(members, v)
            st.reattach(k, l)
            stack.append(fresh_pass())
        else:
            parent[4] += fr[4]
            parent[5].extend(fr[5])


def rsfb_solve(net, direction=None, collect_npv_trace=False) -> SolverResult:
    """Recursive search with dual direction: displace one subtree, restart.

    The spanning tree carries the closing edge between the dummies so the
    deadline bounds every forward displacement.  The classic preprocessing
    step that pre-delays negative terminal activities is vacuous here: with
    the dummy sink attached, every real activity has a successor, so the
    whole displacement work happens in the restarted search.  The search is
    realized with an explicit stack, removing the recursion-depth limit that
    kept the original formulation off large instances.
    """
    st = _RunState(net, RSFB, direction, collect_npv_trace)
    if st.forward:
        sched, tree = early_schedule(net, with_extra_edge=True)
    else:
        sched, tree = late_schedule(net, with_extra_edge=True)
    st.load(sched, tree)
    _rsfb_search(st)
    return st.result()


# -- SAAFB -----------------------------------------------------------------------


def _sad(st: _RunState):
    """One steepest-ascent contraction pass; returns the groups to displace.

    Peels tree leaves toward the initial dummy, accumulating the discounted
    cash of each contracted group (the ascent gradient of a group is
    ``-alpha`` times that sum, so the sign tests below are the gradient
    tests).  A leaf hanging on its binding edge can only move with its
    neighbour and is merged; a leaf free to move is either flagged for
    displacement (strictly improving gradient) or merged.  Each processed
    leaf counts as one iteration.  With a zero discount rate every gradient
    vanishes and nothing is flagged.
    """
    n = st.n
    fwd = st.forward
    tree = st.tree
    improving = st.alpha > 0
    members = {v: [v] for v in range(1, n + 1)}
    gdc = {v: st.dc[v] for v in range(1, n + 1)}
    group = list(range(n + 1))  # alive vertex -> its group key
    rem_out = [set(s) for s in tree.succ]
    rem_in = [set(p) for p in tree.pred]
    alive = bytearray(n + 1)
    for v in range(1, n + 1):
        alive[v] = 1

    def is_source_leaf(v):
        return alive[v] and not rem_in[v] and len(rem_out[v]) == 1

    def is_sink_leaf(v):
        return alive[v] and not rem_out[v] and len(rem_in[v]) == 1

    sources, sinks = [], []

    def classify(v):
        if v == 1 or not alive[v]:
            return
        if is_source_leaf(v):
            heapq.heappush(sources, v)
        elif is_sink_leaf(v):
            heapq.heappush(sinks, v)

    for v in range(2, n + 1):
        classify(v)

    # Forward contraction consumes source leaves first, backward sink leaves;
    # the second class is the one eligible for displacement.
    if fwd:
        first_heap, first_ok = sources, is_source_leaf
        second_heap, second_ok = sinks, is_sink_leaf
    else:
        first_heap, first_ok = sinks, is_sink_leaf
        second_heap, second_ok = sources, is_source_leaf
    z_groups = []
    remaining = n
    while remaining > 1:
        v = 0
        is_first = True
        while first_heap:
            c = heapq.heappop(first_heap)
            if first_ok(c):
                v = c
                break
        if not v:
            is_first = False
            while second_heap:
                c = heapq.heappop(second_heap)
                if second_ok(c):
                    v = c
                    break
        if not v:
            raise SolverError("tree contraction stalled")
        st.metrics.recursion_or_iteration += 1
        source_leaf = is_first if fwd else not is_first
        if source_leaf:
            (w,) = rem_out[v]
            rem_in[w].discard(v)
        else:
            (w,) = rem_in[v]
            rem_out[w].discard(v)
        gv = group[v]
        flag = False
        if not is_first and improving:
            # leaf free to move: forward sinks displace on negative cash
            # (positive delay gradient), backward sources on positive cash
            flag = gdc[gv] < -_TOL if fwd else gdc[gv] > _TOL
        if flag:
            z_groups.append(members.pop(gv))
            gdc.pop(gv)
        else:
            gw = group[w]
            if len(members[gv]) > len(members[gw]):
                gv, gw = gw, gv  # extend the larger list
            members[gw].extend(members.pop(gv))
            gdc[gw] += gdc.pop(gv)
            group[w] = gw
        alive[v] = 0
        remaining -= 1
        classify(w)
    return z_groups


def _va(st: _RunState, z_groups) -> None:
    """Vertex ascent: cut the binding edges crossing the displacement
    partition, then drain the flagged groups."""
    part = {}
    for gi, mem in enumerate(z_groups):
        for m in mem:
            part[m] = gi
    for i, j in list(st.tree.edges()):
        if part.get(i, -1) != part.get(j, -1):
            st.tree.remove_edge(i, j)
    _drain(st, z_groups)


def saafb_solve(net, direction=None, collect_npv_trace=False) -> SolverResult:
    """Steepest ascent with dual direction.

    Alternates contraction passes and vertex ascents until no group has an
    improving gradient.  The restart counter advances once per contraction
    pass (i.e. it counts invocations, so a run whose first pass finds nothing
    reports 1, matching the other two solvers).
    """
    st = _RunState(net, SAAFB, direction, collect_npv_trace)
    sched, tree = early_schedule(net) if st.forward else late_schedule(net)
    st.load(sched, tree)
    guard = _restart_guard(net)
    while True:
        st.metrics.restarted_search += 1
        if st.metrics.restarted_search > guard:
            raise SolverError("search did not converge (restart guard tripped)")
        z_groups = _sad(st)
        if not z_groups:
            break
        _va(st, z_groups)
    return st.result()


# -- HS --------------------------------------------------------------------------


def hs_solve(net, direction=None, collect_npv_trace=False) -> SolverResult:
    """Hybrid search: recursive subtree identification, batched displacement.

    Each pass collects every candidate subtree before any displacement, then
    drains them nearest-bound first; the restart counter advances once per
    pass, so the final clean pass is included.
    """
    st = _RunState(net, HS, direction, collect_npv_trace)
    sched, tree = early_schedule(net) if st.forward else late_schedule(net)
    st.load(sched, tree)
    guard = _restart_guard(net)
    while True:
        st.metrics.restarted_search += 1
        if st.metrics.restarted_search > guard:
            raise SolverError("search did not converge (restart guard tripped)")
        ss = _collect_subtrees(st)
        if not ss:
            break
        _drain(st, ss)
    return st.result()


_SOLVERS = {RSFB: rsfb_solve, SAAFB: saafb_solve, HS: hs_solve}


def solve(net, algorithm, direction=None, collect_npv_trace=False) -> SolverResult:
    """Run one algorithm by name (case-insensitive)."""
    try:
        fn = _SOLVERS[algorithm.upper()]
    except KeyError:
        raise ValueError(f"unknown algorithm {algorithm!r}") from None
    return fn(net, direction=direction, collect_npv_trace=collect_npv_trace)

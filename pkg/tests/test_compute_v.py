import pytest

from npvsched import (
    Activity,
    ProjectNetwork,
    RunMetrics,
    Schedule,
    UnboundedShiftError,
    chain_network,
    compute_v,
)


def test_chain_zero_slack():
    net = chain_network([0, 5, 7, 0], [0, 1, 1, 0], deadline=12)
    k, l, v = compute_v(net, {2}, Schedule([0, 0, 5, 12]))
    assert (k, l, v) == (2, 3, 0)


def test_deadline_bound_via_sink_edge():
    net = chain_network([0, 5, 7, 0], [0, 1, 1, 0], deadline=14)
    k, l, v = compute_v(net, {3}, Schedule([0, 0, 7, 14]))
    assert v == 0
    assert (k, l) == (3, 4)


def test_deadline_wraps_when_sink_moves():
    net = chain_network([0, 5, 7, 0], [0, 1, 1, 0], deadline=20)
    # moving {3, 4}: only the deadline bounds the shift (l = 1 marks it)
    k, l, v = compute_v(net, {3, 4}, Schedule([0, 0, 5, 12]))
    assert (k, l, v) == (4, 1, 8)


def _fan(d2, s3, s4):
    acts = [
        Activity(1, 0, 0),
        Activity(2, d2, 1),
        Activity(3, 3, 1),
        Activity(4, 3, 1),
        Activity(5, 0, 0),
    ]
    edges = [(1, 2), (2, 3), (2, 4), (3, 5), (4, 5)]
    net = ProjectNetwork(acts, edges, 0.0, 30)
    sched = Schedule([0, 0, s3, s4, max(s3, s4) + 3])
    return net, sched


def test_min_over_two_boundary_edges():
    net, sched = _fan(d2=2, s3=5, s4=7)
    k, l, v = compute_v(net, {2}, sched)
    assert (k, l, v) == (2, 3, 3)


def test_tie_keeps_first_in_adjacency_order():
    net, sched = _fan(d2=2, s3=5, s4=5)
    k, l, v = compute_v(net, {2}, sched)
    assert (k, l, v) == (2, 3, 3)


def test_backward_scans_predecessors():
    net = chain_network([0, 5, 7, 0], [0, 1, 1, 0], deadline=20)
    k, l, v = compute_v(net, {3}, Schedule([0, 8, 13, 20]), direction="backward")
    assert (k, l, v) == (3, 2, 0)
    k, l, v = compute_v(net, {2, 3}, Schedule([0, 8, 13, 20]), direction="backward")
    assert (k, l, v) == (2, 1, 8)


def test_edge_counting():
    net, sched = _fan(d2=2, s3=5, s4=7)
    m = RunMetrics()
    compute_v(net, {2}, sched, metrics=m)
    assert m.edge_checked == 2  # both boundary successors examined
    m2 = RunMetrics()
    # members inside the set still cost one check each
    compute_v(net, {2, 3}, sched, metrics=m2)
    assert m2.edge_checked == 3  # (2,3) internal + (2,4) + (3,5)


def test_unbounded_without_boundary():
    net = chain_network([0, 5, 7, 0], [0, 1, 1, 0], deadline=20)
    with pytest.raises(UnboundedShiftError):
        # backward with no outside predecessor in reach
        compute_v(net, {1, 2, 3, 4}, Schedule([0, 8, 13, 20]), direction="backward")

"""Build a small project network by hand and inspect schedules and value.

Run:  python demos/01_model_and_npv.py
"""

from npvsched import (
    Activity,
    ProjectNetwork,
    critical_path_length,
    early_schedule,
    late_schedule,
    npv,
    validate_network,
)

# A five-activity project between the two dummies.  Positive cash flows are
# payments received at an activity's finish, negative ones are outlays.
activities = [
    Activity(1, 0, 0),        # initial dummy
    Activity(2, 6, -80),      # site preparation: pay at finish
    Activity(3, 5, 25),
    Activity(4, 8, 40),
    Activity(5, 4, -30),
    Activity(6, 7, 95),
    Activity(7, 0, 0),        # final dummy
]
edges = [(1, 2), (1, 3), (2, 4), (3, 4), (2, 5), (4, 6), (5, 6), (5, 7), (6, 7)]
net = ProjectNetwork(activities, edges, discount_rate_pct=12, deadline=40)

print("violations:", validate_network(net) or "none")
print("critical path length:", critical_path_length(net))

early, early_tree = early_schedule(net)
late, late_tree = late_schedule(net)
print("early starts:", early.starts)
print("late  starts:", late.starts)
print("binding early-tree edges:", sorted(early_tree.edges()))

print(f"NPV at early starts: {npv(net, early):8.3f}")
print(f"NPV at late  starts: {npv(net, late):8.3f}")
print("Neither extreme is optimal in general: positive flows want to finish")
print("early while negative ones want to finish late; the solvers split the")
print("difference optimally (see demos/02_solvers.py).")

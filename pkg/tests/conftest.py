import pytest

from npvsched import ALGORITHMS
from npvsched.bench import run_batch
from npvsched.generator import FactorAssignment, generate_network, instance_rng

SAMPLE1_SEED = 20260810
SAMPLE1_COUNT = 2000


def small_instance(index, seed=424242, max_vertices=10, perc_neg=None):
    """Random instance tiny enough for exhaustive enumeration."""
    rng = instance_rng(seed, index)
    n = int(rng.integers(4, max_vertices + 1))
    layers = min(int(rng.integers(2, max(3, n - 2))), n - 2)
    factors = FactorAssignment(
        design=1,
        vertices=n,
        layers=layers,
        max_degree=int(rng.choice([2, 3])),
        disc_rate_pct=int(rng.integers(1, 21)),
        perc_neg_pct=int(10 * rng.integers(0, 11)) if perc_neg is None else perc_neg,
        cp_mult=float(rng.uniform(1.0, 2.0)),
        activity_dur_range=(1, 6),
    )
    return generate_network(factors, rng)


@pytest.fixture(scope="session")
def sample1_records():
    """One Sample-1 replication shared by the statistical acceptance tests."""
    return run_batch(1, SAMPLE1_COUNT, SAMPLE1_SEED, ALGORITHMS, parallelism=2)


@pytest.fixture(scope="session")
def sample1_by_instance(sample1_records):
    by_inst = {}
    for r in sample1_records:
        by_inst.setdefault(r.instance_id, {})[r.algorithm] = r
    return by_inst

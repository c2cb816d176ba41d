import math

import numpy as np
import pytest
import scipy.stats
from hypothesis import given, settings, strategies as st

from npvsched.bench import (
    CSV_HEADER,
    ExperimentRecord,
    ks_two_sample,
    max_cost_series,
    read_csv,
    run_batch,
    spearman,
    summarize,
    write_csv,
)


def _record(**kw):
    base = dict(
        instance_id="i0", design=1, vertices=20, layers=3, max_degree=2,
        disc_rate_pct=10, perc_neg_pct=30, cp_mult=1.5, edges=40,
        algorithm="HS", direction="forward", npv=1.0, comp_cost=10,
        restarted=2, wall_ms=0.5,
    )
    base.update(kw)
    return ExperimentRecord(**base)


class TestRunBatch:
    def test_row_count_and_schema(self, tmp_path):
        recs = run_batch(1, 6, 7, ("RSFB", "SAAFB", "HS"), parallelism=1)
        assert len(recs) == 18
        path = tmp_path / "r.csv"
        write_csv(recs, path)
        header = path.read_text().splitlines()[0].split(",")
        assert header == CSV_HEADER
        again = read_csv(path)
        assert [r.instance_id for r in again] == [r.instance_id for r in recs]
        assert [r.npv for r in again] == [r.npv for r in recs]

    def test_rerun_identical_modulo_wall_time(self, tmp_path):
        a = run_batch(1, 5, 11, ("SAAFB",), parallelism=1)
        b = run_batch(1, 5, 11, ("SAAFB",), parallelism=2)
        strip = lambda recs: [
            (r.instance_id, r.algorithm, r.direction, r.npv, r.comp_cost, r.restarted)
            for r in recs
        ]
        assert strip(a) == strip(b)

    def test_unknown_algorithm(self):
        with pytest.raises(ValueError):
            run_batch(1, 1, 0, ("XX",))


class TestSummarize:
    def test_constant_metric(self):
        recs = [_record(comp_cost=5) for _ in range(10)]
        assert summarize(recs, "comp_cost")["HS"] == (5, 5, 5, 5, 5, 5)

    def test_textbook_median(self):
        recs = [_record(comp_cost=v) for v in range(1, 101)]
        mn, q1, med, mean, q3, mx = summarize(recs, "comp_cost")["HS"]
        assert med == pytest.approx(50.5)
        assert (mn, mx) == (1, 100)
        assert q1 == pytest.approx(25.75)  # linear interpolation

    def test_grouped_by_algorithm(self):
        recs = [_record(comp_cost=1), _record(algorithm="RSFB", comp_cost=9)]
        table = summarize(recs, "comp_cost")
        assert set(table) == {"HS", "RSFB"}


class TestKs:
    def test_identical_samples(self):
        a = list(range(50))
        res = ks_two_sample(a, a)
        assert res.statistic == 0.0
        assert res.p_value == pytest.approx(1.0)
        assert res.similar

    def test_disjoint_supports(self):
        res = ks_two_sample(range(100), range(100, 200))
        assert res.statistic == 1.0
        assert not res.similar

    def test_matches_scipy_asymptotic(self):
        rng = np.random.default_rng(3)
        a = rng.gamma(2.0, 10.0, 400)
        b = rng.gamma(2.2, 10.0, 300)
        mine = ks_two_sample(a, b)
        ref_d = scipy.stats.ks_2samp(a, b).statistic
        assert mine.statistic == pytest.approx(ref_d, abs=1e-12)
        # classical Kolmogorov limit law at the effective sample size
        en = a.size * b.size / (a.size + b.size)
        ref_p = scipy.stats.kstwobign.sf(np.sqrt(en) * mine.statistic)
        assert mine.p_value == pytest.approx(ref_p, rel=1e-6, abs=1e-12)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            ks_two_sample([], [1.0])

    @settings(max_examples=40, deadline=None)
    @given(st.lists(st.floats(-1e6, 1e6), min_size=1, max_size=60))
    def test_self_comparison_property(self, xs):
        res = ks_two_sample(xs, xs)
        assert res.statistic == 0.0
        assert res.p_value == pytest.approx(1.0)
        assert res.similar


class TestSpearman:
    def test_identity(self):
        x = [3.0, 1.0, 4.0, 1.5, 9.0]
        assert spearman(x, x) == pytest.approx(1.0)

    def test_reversal(self):
        x = [1.0, 2.0, 3.0, 4.0]
        assert spearman(x, list(reversed(x))) == pytest.approx(-1.0)

    def test_ties_match_scipy(self):
        rng = np.random.default_rng(5)
        x = rng.integers(0, 10, 80).astype(float)
        y = x + rng.integers(0, 5, 80)
        ref = scipy.stats.spearmanr(x, y).statistic
        assert spearman(x, y) == pytest.approx(ref, abs=1e-12)

    def test_zero_variance_is_nan(self):
        assert math.isnan(spearman([1, 1, 1], [1, 2, 3]))

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            spearman([1, 2], [1, 2, 3])

    @settings(max_examples=60, deadline=None)
    @given(
        st.lists(st.integers(-50, 50), min_size=3, max_size=25),
        st.sampled_from(["exp", "cube", "affine"]),
    )
    def test_invariant_under_increasing_transform(self, xs, kind):
        ys = [x + 0.5 * (i % 3) for i, x in enumerate(xs)]
        fn = {
            "exp": lambda v: math.exp(v / 25.0),
            "cube": lambda v: v ** 3,
            "affine": lambda v: 4.0 * v + 7.0,
        }[kind]
        base = spearman(xs, ys)
        mapped = spearman([fn(x) for x in xs], ys)
        if math.isnan(base):
            assert math.isnan(mapped)
        else:
            assert mapped == pytest.approx(base, abs=1e-9)


class TestMaxCostSeries:
    def test_single_record(self):
        s = max_cost_series([_record(comp_cost=17)], "vertices", "comp_cost")
        assert s.points == [(20, 17)]

    def test_max_is_kept(self):
        recs = [_record(comp_cost=10), _record(comp_cost=20)]
        assert max_cost_series(recs, "vertices", "comp_cost").points == [(20, 20)]

    def test_values_are_attained(self):
        recs = [
            _record(instance_id=f"i{k}", vertices=16 + (k % 4), comp_cost=13 * k % 97)
            for k in range(40)
        ]
        series = max_cost_series(recs, "vertices", "comp_cost")
        observed = {(r.vertices, r.comp_cost) for r in recs}
        for v, m in series.points:
            assert (v, m) in observed

    def test_perc_neg_cap(self):
        recs = [
            _record(perc_neg_pct=30, comp_cost=5),
            _record(perc_neg_pct=80, comp_cost=50),
        ]
        s = max_cost_series(recs, "vertices", "comp_cost", perc_neg_cap=50)
        assert s.points == [(20, 5)]

    def test_paper_factor_aliases(self):
        recs = [_record()]
        assert max_cost_series(recs, "percNeg", "comp_cost").points == [(30, 10)]

    def test_unknown_factor(self):
        with pytest.raises(ValueError):
            max_cost_series([_record()], "colour", "comp_cost")

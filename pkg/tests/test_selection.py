import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reference_impls import variance_two_pass
from spamdrift.selection import RunningVariance, VarianceSelector


def test_constant_feature_variance_zero():
    rv = RunningVariance()
    for _ in range(100):
        rv.observe({"c": 3.14})
    assert rv.variance("c") == pytest.approx(0.0, abs=1e-12)
    assert "c" not in rv.selected(0.0)


def test_two_pass_oracle():
    rv = RunningVariance()
    for v in [1.0, 2.0, 3.0, 4.0]:
        rv.observe({"x": v})
    assert rv.variance("x") == pytest.approx(1.25, abs=1e-12)
    assert variance_two_pass([1.0, 2.0, 3.0, 4.0]) == pytest.approx(1.25)


def test_single_observation_variance_zero():
    rv = RunningVariance()
    rv.observe({"x": 9.0})
    assert rv.variance("x") == 0.0


def test_two_distinct_values_kept_at_zero_threshold():
    rv = RunningVariance()
    rv.observe({"x": 1.0})
    rv.observe({"x": 2.0})
    assert "x" in rv.selected(0.0)


def test_infinite_threshold_empty():
    rv = RunningVariance()
    for v in range(10):
        rv.observe({"x": float(v), "y": float(v * v)})
    assert rv.selected(math.inf) == set()


def test_all_zero_url_count_dropped():
    rv = RunningVariance()
    for v in range(50):
        rv.observe({"url_count": 0.0, "word_count": float(v % 7)})
    selected = rv.selected(0.0)
    assert "url_count" not in selected
    assert "word_count" in selected


def test_nan_rejected_per_key():
    rv = RunningVariance()
    rv.observe({"x": 1.0, "y": float("nan")})
    rv.observe({"x": 2.0, "y": 5.0})
    assert rv.stats["x"].count == 2
    assert rv.stats["y"].count == 1


@settings(max_examples=100, deadline=None)
@given(st.lists(st.floats(min_value=-1e4, max_value=1e4), min_size=2, max_size=100))
def test_welford_matches_two_pass(values):
    rv = RunningVariance()
    for v in values:
        rv.observe({"x": v})
    assert rv.variance("x") == pytest.approx(variance_two_pass(values), abs=1e-9, rel=1e-9)


@settings(max_examples=50, deadline=None)
@given(
    st.dictionaries(
        st.sampled_from(["a", "b", "c", "d"]),
        st.lists(st.floats(min_value=-100, max_value=100), min_size=3, max_size=30),
        min_size=1,
    ),
    st.floats(min_value=0, max_value=50),
    st.floats(min_value=0, max_value=50),
)
def test_threshold_monotonicity(columns, t1, t2):
    rv = RunningVariance()
    n = max(len(v) for v in columns.values())
    for i in range(n):
        rv.observe({k: v[i % len(v)] for k, v in columns.items()})
    lo, hi = min(t1, t2), max(t1, t2)
    assert rv.selected(hi) <= rv.selected(lo)


def test_selector_periodic_refresh_and_snapshots():
    sel = VarianceSelector(threshold=0.0, period=10)
    for i in range(25):
        sel.observe({"x": float(i % 3), "const": 1.0})
    assert "x" in sel.selected
    assert "const" not in sel.selected
    # initial refresh plus one per completed period
    indices = [s["sample_index"] for s in sel.snapshots]
    assert indices == [1, 10, 20]
    assert all(isinstance(s["selected"], list) for s in sel.snapshots)
    assert sel.snapshot_jsonl().count("\n") == len(sel.snapshots) - 1

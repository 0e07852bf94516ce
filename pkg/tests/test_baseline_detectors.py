import random

from reference_impls import adwin_trace, eddm_trace
from spamdrift.drift import ADWIN, EDDM, BaselineDetectorAdapter


def test_stationary_all_correct_no_drift():
    eddm, adwin = EDDM(), ADWIN()
    for _ in range(5000):
        assert eddm.observe(False) == "normal"
        assert not adwin.observe(1.0)


def test_adwin_detects_switch_within_64():
    adwin = ADWIN()
    detected_at = None
    for i in range(1000):
        if adwin.observe(0.0 if i < 500 else 1.0) and detected_at is None:
            detected_at = i
    assert detected_at is not None
    assert detected_at - 500 <= 64


def test_adwin_window_shrinks_on_drift():
    adwin = ADWIN()
    for i in range(1000):
        adwin.observe(0.0 if i < 500 else 1.0)
    assert adwin.width < 600   # the stale prefix was dropped


def test_eddm_warning_precedes_drift_on_degrading_gaps():
    # stable phase: 60 errors exactly 40 samples apart; then the gaps decay
    # geometrically (factor 0.97 per error) -> the statistic declines smoothly
    eddm = EDDM()
    gaps = [40] * 60 + [max(2, round(40 * 0.97**k)) for k in range(1, 200)]
    statuses = []
    for gap in gaps:
        for _ in range(gap - 1):
            eddm.observe(False)
        statuses.append(eddm.observe(True))
    abnormal = [s for s in statuses if s != "normal"]
    assert abnormal
    assert abnormal[0] == "warning"
    assert "drift" in abnormal


def test_eddm_trace_matches_reference_exactly():
    rng = random.Random(17)
    errors = []
    for i in range(5000):
        p_err = 0.02 if i < 2500 else 0.25
        errors.append(rng.random() < p_err)
    eddm = EDDM()
    mine = [eddm.observe(e) for e in errors]
    assert mine == eddm_trace(errors)


def test_adwin_trace_matches_reference_exactly():
    rng = random.Random(23)
    values = []
    for i in range(5000):
        p_ok = 0.9 if (i // 1250) % 2 == 0 else 0.55
        values.append(1.0 if rng.random() < p_ok else 0.0)
    adwin = ADWIN()
    mine = [adwin.observe(v) for v in values]
    ref = adwin_trace(values)
    assert mine == ref
    assert any(mine), "the shifting stream should trigger at least one drift"


def test_adapter_surfaces():
    adapter = BaselineDetectorAdapter("adwin")
    report = None
    for i in range(1000):
        correct = i < 500
        report = adapter.observe({}, "spam", "spam" if correct else "nonspam")
    assert adapter.drift_count >= 1
    assert report.sample_index == 999

    eddm = BaselineDetectorAdapter("eddm")
    for _ in range(100):
        assert not eddm.observe({}, "spam", "spam").drift

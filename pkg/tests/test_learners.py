import math
import random

import pytest

from spamdrift.config import ModelConfig
from spamdrift.learners import (
    AdaptiveRandomForestClassifier,
    ExportedTree,
    HoeffdingAdaptiveTreeClassifier,
    HoeffdingTreeClassifier,
    grid_points,
    grid_search_stream,
    hoeffding_bound,
    make_model,
)
from spamdrift.synthetic import numeric_stream


# --- hoeffding bound ----------------------------------------------------------

def test_bound_closed_form():
    assert hoeffding_bound(1.0, math.exp(-2.0), 2) == pytest.approx(math.sqrt(0.5))


def test_bound_quarter_scaling():
    e1 = hoeffding_bound(1.0, 0.01, 100)
    e2 = hoeffding_bound(1.0, 0.01, 400)
    assert e2 == pytest.approx(e1 / 2)


def test_bound_delta_one():
    assert hoeffding_bound(1.0, 1.0, 10) == 0.0


def test_bound_validation():
    with pytest.raises(ValueError):
        hoeffding_bound(1.0, 0.0, 10)
    with pytest.raises(ValueError):
        hoeffding_bound(1.0, 0.5, 0)


# --- single tree ------------------------------------------------------------------

def test_fresh_tree_uniform_prior():
    tree = HoeffdingTreeClassifier()
    pred = tree.predict_proba_one({"x": 1.0})
    assert pred.proba == {"nonspam": 0.5, "spam": 0.5}
    assert pred.label == "nonspam"   # tie goes to the first class in order


def test_single_sample_dominates():
    tree = HoeffdingTreeClassifier(ModelConfig(leaf_prediction="mc"))
    tree.learn_one({"x": 1.0}, "spam")
    pred = tree.predict_proba_one({"x": 1.0})
    assert pred.label == "spam"
    assert pred.proba["spam"] > pred.proba["nonspam"]


def test_laplace_smoothing_values():
    tree = HoeffdingTreeClassifier(ModelConfig(leaf_prediction="mc"))
    for _ in range(3):
        tree.learn_one({"x": 0.0}, "spam")
    tree.learn_one({"x": 0.0}, "nonspam")
    pred = tree.predict_proba_one({"x": 0.0})
    assert pred.proba["spam"] == pytest.approx(4 / 6)
    assert pred.proba["nonspam"] == pytest.approx(2 / 6)


def test_proba_normalized_everywhere():
    tree = HoeffdingTreeClassifier()
    rng = random.Random(0)
    for _ in range(500):
        x = rng.random()
        fv = {"x": x, "y": rng.random()}
        pred = tree.predict_proba_one(fv)
        assert sum(pred.proba.values()) == pytest.approx(1.0, abs=1e-9)
        tree.learn_one(fv, "spam" if x > 0.5 else "nonspam")


def test_root_splits_on_informative_feature():
    cfg = ModelConfig(grace_period=50, leaf_prediction="mc")
    tree = HoeffdingTreeClassifier(cfg)
    for fv, y in numeric_stream(5 * cfg.grace_period, seed=1):
        tree.learn_one(fv, y)
    exported = tree.export_trees()[0]
    root = [n for n in exported["nodes"] if n["id"] == exported["root"]][0]
    assert root["kind"] == "split"
    assert root["feature"] == "x"
    assert 0.0 < root["threshold"] < 1.0


def test_no_split_before_grace_period():
    cfg = ModelConfig(grace_period=200)
    tree = HoeffdingTreeClassifier(cfg)
    for fv, y in numeric_stream(199, seed=2):
        tree.learn_one(fv, y)
    assert tree.n_splits == 0


def test_unknown_feature_keys_ignored_with_warning(caplog):
    tree = HoeffdingTreeClassifier(allowed_features={"x"})
    with caplog.at_level("WARNING"):
        tree.learn_one({"x": 1.0, "mystery": 2.0}, "spam")
    assert "mystery" in caplog.text
    assert "mystery" not in tree.root.stats


# --- prequential purity -------------------------------------------------------------

@pytest.mark.parametrize("kind", ["htc", "hatc", "arfc"])
def test_prediction_prefix_independent_of_future_labels(kind):
    cfg = ModelConfig(kind=kind, n_trees=3, grace_period=50)
    stream = numeric_stream(600, seed=5)
    cut = 300

    def run(labels):
        model = make_model(cfg, seed=9)
        preds = []
        for (fv, _), y in zip(stream, labels):
            preds.append(model.predict_proba_one(fv).label)
            model.learn_one(fv, y)
        return preds

    labels_a = [y for _, y in stream]
    flip = {"spam": "nonspam", "nonspam": "spam"}
    labels_b = labels_a[:cut] + [flip[y] for y in labels_a[cut:]]
    pa, pb = run(labels_a), run(labels_b)
    # prediction at index cut happens before label cut is revealed
    assert pa[: cut + 1] == pb[: cut + 1]
    assert pa[cut + 1 :] != pb[cut + 1 :]


def test_predict_is_side_effect_free():
    tree = HoeffdingTreeClassifier()
    for fv, y in numeric_stream(300, seed=6):
        tree.learn_one(fv, y)
    fv = {"x": 0.7}
    p1 = tree.predict_proba_one(fv)
    p2 = tree.predict_proba_one(fv)
    assert p1 == p2


# --- ARFC -------------------------------------------------------------------------

def test_arfc_majority_vote_stub_members():
    forest = AdaptiveRandomForestClassifier(ModelConfig(kind="arfc", n_trees=3, poisson_rate=None))
    # train members by hand onto different majorities
    forest.members[0].tree.learn_one({"x": 0.0}, "spam")
    forest.members[1].tree.learn_one({"x": 0.0}, "spam")
    forest.members[2].tree.learn_one({"x": 0.0}, "nonspam")
    assert forest.predict_proba_one({"x": 0.0}).label == "spam"


def test_arfc_identical_members_equal_single_tree():
    cfg = ModelConfig(
        kind="arfc",
        n_trees=3,
        poisson_rate=None,
        feature_fraction=1.0,
        leaf_prediction="mc",
        warning_delta=None,
        drift_delta=None,
    )
    forest = AdaptiveRandomForestClassifier(cfg, seed=0)
    tree = HoeffdingTreeClassifier(ModelConfig(leaf_prediction="mc"))
    for fv, y in numeric_stream(500, seed=7):
        assert forest.predict_proba_one(fv).label == tree.predict_proba_one(fv).label
        forest.learn_one(fv, y)
        tree.learn_one(fv, y)


def test_arfc_deterministic_given_seed():
    cfg = ModelConfig(kind="arfc", n_trees=3)
    runs = []
    for _ in range(2):
        forest = AdaptiveRandomForestClassifier(cfg, seed=13)
        preds = []
        for fv, y in numeric_stream(400, seed=8):
            preds.append(forest.predict_proba_one(fv).label)
            forest.learn_one(fv, y)
        runs.append(preds)
    assert runs[0] == runs[1]


# --- HATC ---------------------------------------------------------------------------

def test_hatc_swaps_on_sustained_improvement():
    cfg = ModelConfig(kind="hatc", grace_period=50, leaf_prediction="mc", swap_grace=100)
    tree = HoeffdingAdaptiveTreeClassifier(cfg)
    rng = random.Random(10)
    # phase 1: y = [x > 0.5]; phase 2: inverted relation
    for i in range(6000):
        x = rng.random()
        y = ("spam" if x > 0.5 else "nonspam") if i < 2000 else ("nonspam" if x > 0.5 else "spam")
        tree.learn_one({"x": x}, y)
    correct = 0
    for _ in range(500):
        x = rng.random()
        y = "nonspam" if x > 0.5 else "spam"
        correct += tree.predict_proba_one({"x": x}).label == y
    assert tree.n_swaps >= 1
    assert correct / 500 > 0.9
    assert len(tree.export_trees()) == 1


# --- export / reimport ------------------------------------------------------------------

@pytest.mark.parametrize("kind,n_trees", [("htc", 1), ("hatc", 1), ("arfc", 4)])
def test_export_tree_count(kind, n_trees):
    cfg = ModelConfig(kind=kind, n_trees=4)
    model = make_model(cfg, seed=2)
    assert len(model.export_trees()) == n_trees


def test_empty_model_exports_single_leaf():
    tree = HoeffdingTreeClassifier()
    exported = tree.export_trees()[0]
    assert len(exported["nodes"]) == 1
    assert exported["nodes"][0]["kind"] == "leaf"


def test_export_reimport_round_trip():
    cfg = ModelConfig(leaf_prediction="mc", grace_period=50)
    tree = HoeffdingTreeClassifier(cfg)
    rng = random.Random(3)
    for _ in range(3000):
        fv = {"x": rng.random(), "y": rng.random()}
        tree.learn_one(fv, "spam" if fv["x"] > 0.5 else "nonspam")
    assert tree.n_splits > 0
    reimported = ExportedTree(tree.export_trees()[0])
    for _ in range(100):
        fv = {"x": rng.random(), "y": rng.random()}
        assert reimported.predict_proba(fv) == pytest.approx(tree.predict_proba_one(fv).proba)


# --- grid search ---------------------------------------------------------------------------

def test_grid_single_point():
    base = ModelConfig(kind="htc")
    only = ModelConfig(kind="htc", grace_period=77)
    window = [({"x": 1.0}, "spam")]
    assert grid_search_stream(base, window, grid=[only]) == only


def test_grid_empty_window_returns_none():
    assert grid_search_stream(ModelConfig(), []) is None


def test_grid_exhaustiveness_on_separable_window():
    window = numeric_stream(800, seed=12)
    base = ModelConfig(kind="htc")
    chosen = grid_search_stream(base, window)
    assert chosen in grid_points(base)

    def window_accuracy(cfg):
        model = make_model(cfg, seed=42)
        correct = 0
        for fv, y in window:
            correct += model.predict_proba_one(fv).label == y
            model.learn_one(fv, y)
        return correct

    accs = {i: window_accuracy(p) for i, p in enumerate(grid_points(base))}
    best = max(accs.values())
    assert window_accuracy(chosen) == best


def test_grid_tie_breaks_to_first_point():
    base = ModelConfig(kind="htc")
    points = grid_points(base)
    # a window every configuration gets wrong the same way: single sample
    window = [({"x": 1.0}, "spam")]
    assert grid_search_stream(base, window) == points[0]


def test_grid_point_counts():
    assert len(grid_points(ModelConfig(kind="htc"))) == 8
    assert len(grid_points(ModelConfig(kind="arfc"))) == 16

import json

import numpy as np
import pytest

from solicit.errors import (
    ConfigurationError,
    ContractError,
    EvaluationError,
    TrainingError,
)
from solicit.model import (
    CostConfig,
    LabeledDataset,
    WeightedLinearSVM,
    WeightedLogisticRegression,
    assign_weights,
    auc_score,
    compute_metrics,
    kfold_evaluate,
    load_model,
    model_from_dict,
    model_to_dict,
    save_model,
    stratified_folds,
)


def brute_force_auc(scores, labels):
    """Independent oracle: all positive/negative pairs, ties worth 1/2."""
    pos = [s for s, y in zip(scores, labels) if y == 1]
    neg = [s for s, y in zip(scores, labels) if y == 0]
    total = 0.0
    for p in pos:
        for n in neg:
            if p > n:
                total += 1.0
            elif p == n:
                total += 0.5
    return total / (len(pos) * len(neg))


def random_dataset(rng, n=40, d=6, informative=True):
    X = rng.normal(size=(n, d))
    if informative:
        beta = rng.normal(size=d)
        y = (X @ beta + 0.3 * rng.normal(size=n) > 0).astype(int)
    else:
        y = rng.integers(0, 2, size=n)
    if y.sum() in (0, n):
        y[0] = 1 - y[0]
    return X, y


class TestAssignWeights:
    def test_uniform_weights(self):
        w = assign_weights([1, 0, 1], CostConfig(benefit=2, cost=1))
        assert list(w) == [1, 1, 1]

    def test_asymmetric(self):
        w = assign_weights([1, 0], CostConfig(benefit=11, cost=1))
        assert list(w) == [10, 1]

    def test_equal_benefit_cost_rejected(self):
        with pytest.raises(ConfigurationError):
            CostConfig(benefit=1, cost=1)

    def test_benefit_below_cost_rejected(self):
        with pytest.raises(ConfigurationError):
            CostConfig(benefit=0.5, cost=1)


class TestLogistic:
    def test_all_zero_features_balanced(self):
        X = np.zeros((4, 3))
        y = np.array([0, 0, 1, 1])
        m = WeightedLogisticRegression().fit(X, y)
        assert m.intercept_ == pytest.approx(0.0, abs=1e-9)
        assert m.predict_proba(X)[:, 1] == pytest.approx([0.5] * 4)

    def test_separable_monotone(self):
        X = np.linspace(-2, 2, 12).reshape(-1, 1)
        y = (X[:, 0] > 0).astype(int)
        m = WeightedLogisticRegression().fit(X, y)
        probs = m.predict_proba(X)[:, 1]
        assert np.all(np.diff(probs) > 0)

    def test_gradient_matches_finite_differences(self):
        rng = np.random.default_rng(5)
        for _ in range(3):
            Z = rng.normal(size=(20, 10))
            y = rng.integers(0, 2, size=20)
            w = rng.uniform(0.5, 3.0, size=20)
            theta = rng.normal(scale=0.5, size=11)
            lam = 1e-3
            _, grad = WeightedLogisticRegression.loss_and_grad(theta, Z, y, w, lam)
            h = 1e-5
            for j in range(len(theta)):
                e = np.zeros_like(theta)
                e[j] = h
                lp, _ = WeightedLogisticRegression.loss_and_grad(theta + e, Z, y, w, lam)
                lm, _ = WeightedLogisticRegression.loss_and_grad(theta - e, Z, y, w, lam)
                numeric = (lp - lm) / (2 * h)
                denom = max(1.0, abs(numeric))
                assert abs(grad[j] - numeric) / denom < 1e-5

    def test_single_class_rejected(self):
        with pytest.raises(TrainingError):
            WeightedLogisticRegression().fit(np.zeros((3, 2)), [1, 1, 1])

    def test_loss_history_monotone(self):
        rng = np.random.default_rng(2)
        X, y = random_dataset(rng)
        m = WeightedLogisticRegression(max_iter=200).fit(X, y)
        diffs = np.diff(m.loss_history_)
        assert (diffs <= 1e-12).all()

    def test_weight_scale_invariance(self):
        rng = np.random.default_rng(9)
        X, y = random_dataset(rng, n=30)
        w = rng.uniform(0.5, 2.0, size=30)
        a = WeightedLogisticRegression(lam=1e-2, tol=1e-10, max_iter=20000).fit(
            X, y, sample_weight=w
        )
        b = WeightedLogisticRegression(lam=5e-2, tol=1e-10, max_iter=20000).fit(
            X, y, sample_weight=5.0 * w
        )
        assert a.coef_ == pytest.approx(b.coef_, abs=1e-5)
        assert a.intercept_ == pytest.approx(b.intercept_, abs=1e-5)

    def test_standardization_round_trip(self):
        rng = np.random.default_rng(4)
        X = rng.normal(loc=3.0, scale=7.0, size=(50, 4))
        X[rng.random(size=X.shape) < 0.2] = np.nan
        y = rng.integers(0, 2, size=50)
        y[:2] = [0, 1]
        m = WeightedLogisticRegression(max_iter=5).fit(X, y)
        Z = (X - m.feature_means_) / m.feature_stds_
        for j in range(X.shape[1]):
            col = Z[:, j][~np.isnan(Z[:, j])]
            assert abs(col.mean()) < 1e-9
            assert abs(col.std() - 1.0) < 1e-9

    def test_zero_variance_feature_pinned(self):
        rng = np.random.default_rng(8)
        X = rng.normal(size=(30, 3))
        X[:, 1] = 7.0
        y = (X[:, 0] > 0).astype(int)
        m = WeightedLogisticRegression().fit(X, y)
        assert m.coef_[1] == 0.0
        assert m.feature_stds_[1] == 1.0


class TestSVM:
    def test_separable_margins_signed(self):
        X = np.vstack([np.full((10, 1), -2.0) + 0.1 * np.arange(10).reshape(-1, 1),
                       np.full((10, 1), 2.0) + 0.1 * np.arange(10).reshape(-1, 1)])
        y = np.array([0] * 10 + [1] * 10)
        m = WeightedLinearSVM(epochs=4000).fit(X, y)
        margins = m.decision_function(X)
        s = 2 * y - 1
        assert (s * margins > 0).all()
        hinge = np.maximum(0.0, 1.0 - s * margins).sum()
        assert hinge < 0.05

    def test_platt_monotone(self):
        margins = np.array([-2.0, -1.0, 1.0, 2.0])
        y = np.array([0, 0, 1, 1])
        from solicit.model import _platt_fit, _platt_predict

        ab = _platt_fit(margins, y)
        probs = _platt_predict(np.linspace(-3, 3, 50), ab)
        assert np.all(np.diff(probs) > 0)

    def test_duplicate_half_weight_identical(self):
        rng = np.random.default_rng(3)
        X, y = random_dataset(rng, n=24, d=5)
        w = np.ones(24)
        a = WeightedLinearSVM(epochs=1500).fit(X, y, sample_weight=w)
        X2 = np.vstack([X, X])
        y2 = np.concatenate([y, y])
        w2 = np.concatenate([w / 2, w / 2])
        b = WeightedLinearSVM(epochs=1500).fit(X2, y2, sample_weight=w2)
        assert a.coef_ == pytest.approx(b.coef_, abs=1e-6)
        assert a.intercept_ == pytest.approx(b.intercept_, abs=1e-6)

    def test_calibration_preserves_ranking(self):
        rng = np.random.default_rng(6)
        X, y = random_dataset(rng, n=60, d=4)
        m = WeightedLinearSVM().fit(X, y)
        margins = m.decision_function(X)
        probs = m.predict_proba(X)[:, 1]
        order = np.argsort(margins)
        assert np.all(np.diff(probs[order]) >= 0)
        distinct = np.diff(margins[order]) > 1e-12
        assert np.all(np.diff(probs[order])[distinct] > 0)


class TestPredictProba:
    def test_zero_coefficient_model(self):
        doc = {
            "kind": "logistic",
            "coefficients": [0.0, 0.0],
            "intercept": 0.0,
            "standardizer": {"means": [0, 0], "stds": [1, 1], "imputation_means": [0, 0]},
            "calibration": None,
            "feature_names": ["a", "b"],
            "seed": 0,
            "hyperparameters": {},
        }
        m = model_from_dict(doc)
        assert m.predict_proba(np.array([[5.0, -3.0]]))[0, 1] == 0.5

    def test_fully_masked_vector_equals_imputation_point(self):
        rng = np.random.default_rng(1)
        X, y = random_dataset(rng, n=30, d=4)
        m = WeightedLogisticRegression().fit(X, y)
        nan_row = np.full((1, 4), np.nan)
        mean_row = m.feature_means_.reshape(1, -1)
        assert m.predict_proba(nan_row)[0, 1] == pytest.approx(
            m.predict_proba(mean_row)[0, 1]
        )

    def test_monotone_in_positive_feature(self):
        X = np.linspace(-1, 1, 20).reshape(-1, 1)
        y = (X[:, 0] > 0).astype(int)
        m = WeightedLogisticRegression().fit(X, y)
        lo = m.predict_proba(np.array([[0.0]]))[0, 1]
        hi = m.predict_proba(np.array([[1.0]]))[0, 1]
        assert hi > lo

    def test_length_mismatch_rejected(self):
        rng = np.random.default_rng(1)
        X, y = random_dataset(rng, n=20, d=4)
        m = WeightedLogisticRegression().fit(X, y)
        with pytest.raises(ContractError):
            m.predict_proba(np.zeros((1, 5)))


class TestMetrics:
    def test_perfect_ranking(self):
        assert auc_score([0.9, 0.8, 0.7, 0.1], [1, 1, 0, 0]) == 1.0

    def test_derived_case_three_quarters(self):
        scores = [0.9, 0.6, 0.7, 0.1]
        labels = [1, 1, 0, 0]
        assert auc_score(scores, labels) == pytest.approx(brute_force_auc(scores, labels))
        assert auc_score(scores, labels) == 0.75

    def test_all_ties(self):
        assert auc_score([0.5] * 6, [1, 0, 1, 0, 1, 0]) == 0.5

    def test_matches_brute_force_on_random_sets(self):
        rng = np.random.default_rng(7)
        for _ in range(25):
            n = int(rng.integers(4, 40))
            scores = rng.choice([0.1, 0.2, 0.5, 0.7, 0.9], size=n)
            labels = rng.integers(0, 2, size=n)
            if labels.sum() in (0, n):
                labels[0] = 1 - labels[0]
            assert auc_score(scores, labels) == pytest.approx(
                brute_force_auc(scores, labels), abs=1e-12
            )

    def test_degenerate_labels_rejected(self):
        with pytest.raises(EvaluationError):
            auc_score([0.1, 0.2], [1, 1])

    def test_zero_predicted_positives_flagged(self):
        m = compute_metrics([0.1, 0.2, 0.3], [1, 0, 1])
        assert m.precision == 0.0 and m.zero_predicted_positives

    def test_f1_is_harmonic_mean(self):
        m = compute_metrics([0.9, 0.9, 0.1, 0.9], [1, 1, 0, 0])
        expected = 2 * m.precision * m.recall / (m.precision + m.recall)
        assert m.f1 == pytest.approx(expected)


class TestKFold:
    def test_stratification(self):
        y = np.array([1] * 60 + [0] * 40)
        folds = stratified_folds(y, 5, seed=0)
        for f in range(5):
            sel = folds == f
            assert sel.sum() == 20
            assert y[sel].sum() == 12

    def test_same_seed_identical_report(self):
        rng = np.random.default_rng(12)
        X, y = random_dataset(rng, n=60, d=5)
        ds = LabeledDataset(X=X, y=y, weights=np.ones(60), feature_names=list("abcde"))
        r1 = kfold_evaluate(ds, k=3, kind="logistic", seed=4)
        r2 = kfold_evaluate(ds, k=3, kind="logistic", seed=4)
        assert r1.as_dict() == r2.as_dict()

    def test_class_too_small_rejected(self):
        y = np.array([1, 0, 0, 0, 0, 0])
        with pytest.raises(EvaluationError):
            stratified_folds(y, 3, seed=0)

    def test_mean_metrics_in_unit_interval(self):
        rng = np.random.default_rng(13)
        X, y = random_dataset(rng, n=80, d=5)
        ds = LabeledDataset(X=X, y=y, weights=np.ones(80), feature_names=list("abcde"))
        report = kfold_evaluate(ds, k=4, kind="logistic", seed=1)
        for metric in (report.mean.precision, report.mean.recall, report.mean.f1, report.mean.auc):
            assert 0.0 <= metric <= 1.0


class TestPersistence:
    def test_round_trip_logistic(self, tmp_path):
        rng = np.random.default_rng(21)
        X, y = random_dataset(rng, n=40, d=6)
        m = WeightedLogisticRegression().fit(X, y)
        path = tmp_path / "model.json"
        save_model(m, path, feature_names=list("abcdef"))
        loaded, names = load_model(path)
        assert names == list("abcdef")
        assert loaded.predict_proba(X)[:, 1] == pytest.approx(m.predict_proba(X)[:, 1])

    def test_round_trip_svm(self, tmp_path):
        rng = np.random.default_rng(22)
        X, y = random_dataset(rng, n=40, d=6)
        m = WeightedLinearSVM(epochs=500).fit(X, y)
        path = tmp_path / "model.json"
        save_model(m, path)
        loaded, _ = load_model(path)
        assert loaded.predict_proba(X)[:, 1] == pytest.approx(m.predict_proba(X)[:, 1])

    def test_document_fields(self, tmp_path):
        rng = np.random.default_rng(23)
        X, y = random_dataset(rng, n=30, d=3)
        m = WeightedLinearSVM(epochs=100).fit(X, y)
        doc = model_to_dict(m, feature_names=["x", "y", "z"])
        for key in ("kind", "coefficients", "intercept", "standardizer", "calibration",
                    "feature_names", "seed", "hyperparameters"):
            assert key in doc
        json.dumps(doc)  # serializable

"""Cost-weighted response-likelihood classifiers and their evaluation.

Two estimators with a scikit-learn-style surface (fit / predict /
predict_proba / get_params): a weighted logistic regression trained by
full-batch gradient descent with backtracking line search, and a
weighted linear SVM trained by deterministic batch subgradient descent
with Platt-calibrated probabilities. Both standardize and mean-impute
features internally using training-set statistics, so a saved model is
self-contained.

Solvers are written out rather than delegated so that training can be
verified against independent oracles (finite differences, brute-force
pair counting).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin

from .errors import ConfigurationError, ContractError, DataError, EvaluationError, TrainingError
from .validation import check_feature_matrix, check_labels, check_sample_weight


@dataclass(frozen=True)
class CostConfig:
    """Unit benefit of a response and unit cost of sending a question."""

    benefit: float = 2.0
    cost: float = 1.0

    def __post_init__(self):
        if not (self.benefit > self.cost > 0):
            raise ConfigurationError(
                f"need benefit > cost > 0, got benefit={self.benefit}, cost={self.cost}"
            )


def assign_weights(labels, cost: CostConfig) -> np.ndarray:
    """Sample weights: benefit - cost for responders, cost for the rest."""
    y = check_labels(labels)
    return np.where(y == 1, cost.benefit - cost.cost, cost.cost).astype(np.float64)


@dataclass
class LabeledDataset:
    X: np.ndarray
    y: np.ndarray
    weights: np.ndarray
    feature_names: list[str]

    def __post_init__(self):
        self.X = check_feature_matrix(self.X)
        self.y = check_labels(self.y, self.X.shape[0])
        self.weights = check_sample_weight(self.weights, self.X.shape[0])
        if len(self.feature_names) != self.X.shape[1]:
            raise ContractError("feature_names length != column count")

    @property
    def missing_mask(self) -> np.ndarray:
        return np.isnan(self.X)


# --- standardization -------------------------------------------------------

def _fit_standardizer(X):
    """Column means/stds over unmasked entries; fully-masked columns get (0, 1)."""
    n_obs = (~np.isnan(X)).sum(axis=0)
    means = np.zeros(X.shape[1])
    stds = np.ones(X.shape[1])
    observed = n_obs > 0
    if observed.any():
        with np.errstate(invalid="ignore"):
            means[observed] = np.nanmean(X[:, observed], axis=0)
            stds[observed] = np.nanstd(X[:, observed], axis=0)
    stds[stds == 0] = 1.0
    return means, stds


def _standardize(X, means, stds):
    Z = X.copy()
    nan = np.isnan(Z)
    if nan.any():
        Z[nan] = np.broadcast_to(means, Z.shape)[nan]
    return (Z - means) / stds


def _sigmoid(z):
    return 0.5 * (1.0 + np.tanh(0.5 * z))


class _StandardizedLinearModel(BaseEstimator, ClassifierMixin):
    """Shared plumbing: validation, standardizer, linear score, persistence."""

    kind = "linear"

    def _prepare_fit(self, X, y, sample_weight):
        X = check_feature_matrix(X)
        y = check_labels(y, X.shape[0])
        if sample_weight is None:
            sample_weight = np.ones(X.shape[0])
        w = check_sample_weight(sample_weight, X.shape[0])
        if len(np.unique(y)) < 2:
            raise TrainingError("training data contains a single class")
        self.feature_means_, self.feature_stds_ = _fit_standardizer(X)
        Z = _standardize(X, self.feature_means_, self.feature_stds_)
        if not np.all(np.isfinite(Z)):
            raise DataError("non-finite feature after standardization")
        self.classes_ = np.array([0, 1])
        self.n_features_in_ = X.shape[1]
        return Z, y, w

    def _transform(self, X):
        X = check_feature_matrix(X, n_features=self.n_features_in_)
        return _standardize(X, self.feature_means_, self.feature_stds_)

    def decision_function(self, X):
        Z = self._transform(X)
        return Z @ self.coef_ + self.intercept_

    def predict(self, X):
        return (self.predict_proba(X)[:, 1] >= 0.5).astype(int)

    def _meta(self):
        return {
            "seed": self.seed,
            "hyperparameters": self.get_params(),
        }


class WeightedLogisticRegression(_StandardizedLinearModel):
    """Weighted L2-regularized logistic regression.

    Minimizes sum_i w_i * logloss_i + (lam/2)*||coef||^2 over standardized,
    mean-imputed features by full-batch gradient descent with backtracking
    line search (Armijo condition). The intercept is not regularized.
    """

    kind = "logistic"

    def __init__(self, lam=1e-3, max_iter=5000, tol=1e-6, seed=0):
        self.lam = lam
        self.max_iter = max_iter
        self.tol = tol
        self.seed = seed

    @staticmethod
    def loss_and_grad(theta, Z, y, w, lam):
        """Objective and gradient at theta = [coef..., intercept]."""
        beta, b = theta[:-1], theta[-1]
        z = Z @ beta + b
        # per-sample logloss: log(1 + e^z) - y z, numerically stable
        loss = float(np.dot(w, np.logaddexp(0.0, z) - y * z) + 0.5 * lam * beta @ beta)
        resid = w * (_sigmoid(z) - y)
        grad = np.empty_like(theta)
        grad[:-1] = Z.T @ resid + lam * beta
        grad[-1] = resid.sum()
        return loss, grad

    def fit(self, X, y, sample_weight=None):
        Z, y, w = self._prepare_fit(X, y, sample_weight)
        lam = float(self.lam)
        theta = np.zeros(Z.shape[1] + 1)
        loss, grad = self.loss_and_grad(theta, Z, y, w, lam)
        history = [loss]
        step = 1.0 / max(1.0, float(w.sum()))
        converged = False
        it = 0
        for it in range(1, self.max_iter + 1):
            gnorm = float(np.abs(grad).max())
            if gnorm < self.tol:
                converged = True
                break
            descent = -float(grad @ grad)
            step = min(step * 2.0, 1e6)
            while True:
                cand = theta - step * grad
                cand_loss, cand_grad = self.loss_and_grad(cand, Z, y, w, lam)
                if cand_loss <= loss + 1e-4 * step * descent:
                    break
                step *= 0.5
                if step < 1e-18:
                    # flat to machine precision; treat as converged
                    cand, cand_loss, cand_grad = theta, loss, grad
                    converged = True
                    break
            theta, loss, grad = cand, cand_loss, cand_grad
            history.append(loss)
            if converged:
                break
        self.coef_ = theta[:-1]
        self.intercept_ = float(theta[-1])
        self.n_iter_ = it
        self.converged_ = converged
        self.loss_history_ = np.asarray(history)
        return self

    def predict_proba(self, X):
        p = _sigmoid(self.decision_function(X))
        return np.column_stack([1.0 - p, p])


class WeightedLinearSVM(_StandardizedLinearModel):
    """Weighted linear SVM with Platt-calibrated probabilities.

    Minimizes sum_i w_i * max(0, 1 - s_i*(coef.x + b)) + (lam/2)*||coef||^2
    (s_i = 2y_i - 1) by deterministic batch subgradient steps with learning
    rate 1/(lam*t) at epoch t, then fits a logistic calibration A, B on the
    training margins so that predict_proba returns probabilities.
    """

    kind = "linear_svm"

    def __init__(self, lam=1e-2, epochs=2000, seed=0):
        self.lam = lam
        self.epochs = epochs
        self.seed = seed

    def fit(self, X, y, sample_weight=None):
        Z, y, w = self._prepare_fit(X, y, sample_weight)
        lam = float(self.lam)
        s = 2.0 * y - 1.0
        beta = np.zeros(Z.shape[1])
        b = 0.0
        for t in range(1, self.epochs + 1):
            eta = 1.0 / (lam * t)
            margins = s * (Z @ beta + b)
            viol = margins < 1.0
            ws = w[viol] * s[viol]
            beta = (1.0 - 1.0 / t) * beta + eta * (ws @ Z[viol])
            b = b + eta * ws.sum()
        self.coef_ = beta
        self.intercept_ = float(b)
        margins = Z @ beta + b
        self.calibration_ = _platt_fit(margins, y)
        return self

    def predict_proba(self, X):
        p = _platt_predict(self.decision_function(X), self.calibration_)
        return np.column_stack([1.0 - p, p])


def _platt_fit(margins, y, max_iter=100, min_step=1e-10, sigma=1e-12):
    """Newton fit of p = 1/(1+exp(A*f+B)) on training margins (Platt, as
    implemented in LIBSVM, with the +1/+2 target smoothing)."""
    f = np.asarray(margins, dtype=np.float64)
    prior1 = float(np.sum(y == 1))
    prior0 = float(np.sum(y == 0))
    hi = (prior1 + 1.0) / (prior1 + 2.0)
    lo = 1.0 / (prior0 + 2.0)
    t = np.where(y == 1, hi, lo)

    def objective(a, b):
        z = a * f + b
        return float(np.sum(np.logaddexp(0.0, -z) + t * z))

    A, B = 0.0, math.log((prior0 + 1.0) / (prior1 + 1.0))
    fval = objective(A, B)
    for _ in range(max_iter):
        z = A * f + B
        p = _sigmoid(-z)
        q = 1.0 - p
        d2 = p * q
        h11 = float(np.dot(f * f, d2)) + sigma
        h22 = float(d2.sum()) + sigma
        h21 = float(np.dot(f, d2))
        d1 = t - p
        g1 = float(np.dot(f, d1))
        g2 = float(d1.sum())
        if abs(g1) < 1e-5 and abs(g2) < 1e-5:
            break
        det = h11 * h22 - h21 * h21
        dA = -(h22 * g1 - h21 * g2) / det
        dB = -(-h21 * g1 + h11 * g2) / det
        gd = g1 * dA + g2 * dB
        step = 1.0
        while step >= min_step:
            newA, newB = A + step * dA, B + step * dB
            newf = objective(newA, newB)
            if newf < fval + 1e-4 * step * gd:
                A, B, fval = newA, newB, newf
                break
            step /= 2.0
        else:
            break
    return float(A), float(B)


def _platt_predict(margins, calibration):
    A, B = calibration
    return _sigmoid(-(A * np.asarray(margins, dtype=np.float64) + B))


# --- metrics ---------------------------------------------------------------

@dataclass(frozen=True)
class Metrics:
    precision: float
    recall: float
    f1: float
    auc: float
    zero_predicted_positives: bool = False

    def as_dict(self):
        return {
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "auc": self.auc,
            "zero_predicted_positives": self.zero_predicted_positives,
        }


def auc_score(scores, labels) -> float:
    """Rank-based AUC with midranks for ties (Mann-Whitney)."""
    scores = np.asarray(scores, dtype=np.float64)
    y = check_labels(labels, scores.shape[0])
    n_pos = int(y.sum())
    n_neg = int(y.shape[0] - n_pos)
    if n_pos == 0 or n_neg == 0:
        raise EvaluationError("AUC undefined: need at least one example of each class")
    order = np.argsort(scores, kind="mergesort")
    ranks = np.empty(len(scores), dtype=np.float64)
    sorted_scores = scores[order]
    i = 0
    while i < len(scores):
        j = i
        while j + 1 < len(scores) and sorted_scores[j + 1] == sorted_scores[i]:
            j += 1
        ranks[order[i : j + 1]] = 0.5 * (i + j) + 1.0
        i = j + 1
    rank_sum = float(ranks[y == 1].sum())
    return (rank_sum - n_pos * (n_pos + 1) / 2.0) / (n_pos * n_neg)


def compute_metrics(probabilities, labels, threshold=0.5) -> Metrics:
    """Precision/recall/F1 at the threshold plus rank-based AUC."""
    p = np.asarray(probabilities, dtype=np.float64)
    y = check_labels(labels, p.shape[0])
    pred = p >= threshold
    tp = int(np.sum(pred & (y == 1)))
    fp = int(np.sum(pred & (y == 0)))
    fn = int(np.sum(~pred & (y == 1)))
    zero_pred = (tp + fp) == 0
    precision = 0.0 if zero_pred else tp / (tp + fp)
    recall = 0.0 if (tp + fn) == 0 else tp / (tp + fn)
    f1 = 0.0 if (precision + recall) == 0 else 2 * precision * recall / (precision + recall)
    return Metrics(
        precision=precision,
        recall=recall,
        f1=f1,
        auc=auc_score(p, y),
        zero_predicted_positives=zero_pred,
    )


# --- cross-validation ------------------------------------------------------

MODEL_KINDS = {
    "logistic": WeightedLogisticRegression,
    "linear_svm": WeightedLinearSVM,
}


def make_model(kind: str, **hyper):
    if kind not in MODEL_KINDS:
        raise ConfigurationError(f"unknown model kind {kind!r}")
    return MODEL_KINDS[kind](**hyper)


@dataclass
class EvalReport:
    kind: str
    seed: int
    folds: list[Metrics]
    mean: Metrics = field(init=False)

    def __post_init__(self):
        self.mean = Metrics(
            precision=float(np.mean([m.precision for m in self.folds])),
            recall=float(np.mean([m.recall for m in self.folds])),
            f1=float(np.mean([m.f1 for m in self.folds])),
            auc=float(np.mean([m.auc for m in self.folds])),
            zero_predicted_positives=any(m.zero_predicted_positives for m in self.folds),
        )

    def as_dict(self):
        return {
            "kind": self.kind,
            "seed": self.seed,
            "folds": [m.as_dict() for m in self.folds],
            "mean": self.mean.as_dict(),
        }

    def to_text_table(self) -> str:
        headers = ["fold", "precision", "recall", "f1", "auc"]
        rows = [
            [str(i + 1), *(f"{getattr(m, h):.4f}" for h in headers[1:])]
            for i, m in enumerate(self.folds)
        ]
        rows.append(["mean", *(f"{getattr(self.mean, h):.4f}" for h in headers[1:])])
        widths = [max(len(h), *(len(r[c]) for r in rows)) for c, h in enumerate(headers)]
        lines = ["  ".join(h.ljust(widths[c]) for c, h in enumerate(headers))]
        lines.extend("  ".join(v.ljust(widths[c]) for c, v in enumerate(row)) for row in rows)
        return "\n".join(lines)


def stratified_folds(y, k, seed) -> np.ndarray:
    """Fold index per example: each class shuffled then dealt round-robin."""
    y = check_labels(y)
    rng = np.random.default_rng(seed)
    assignment = np.empty(len(y), dtype=np.int64)
    for cls in (0, 1):
        idx = np.flatnonzero(y == cls)
        if len(idx) < k:
            raise EvaluationError(f"class {cls} has {len(idx)} members, fewer than k={k}")
        rng.shuffle(idx)
        assignment[idx] = np.arange(len(idx)) % k
    return assignment


def kfold_evaluate(dataset: LabeledDataset, k=5, kind="logistic", cost=None, seed=0, **hyper) -> EvalReport:
    """Stratified k-fold CV; standardizer and imputer are refit per fold."""
    cost = cost or CostConfig()
    folds = stratified_folds(dataset.y, k, seed)
    per_fold = []
    for f in range(k):
        train = folds != f
        test = ~train
        model = make_model(kind, seed=seed, **hyper)
        weights = assign_weights(dataset.y[train], cost)
        model.fit(dataset.X[train], dataset.y[train], sample_weight=weights)
        probs = model.predict_proba(dataset.X[test])[:, 1]
        per_fold.append(compute_metrics(probs, dataset.y[test]))
    return EvalReport(kind=kind, seed=seed, folds=per_fold)


# --- persistence -----------------------------------------------------------

def model_to_dict(model, feature_names=None) -> dict:
    doc = {
        "kind": model.kind,
        "coefficients": [float(v) for v in model.coef_],
        "intercept": model.intercept_,
        "standardizer": {
            "means": [float(v) for v in model.feature_means_],
            "stds": [float(v) for v in model.feature_stds_],
            "imputation_means": [float(v) for v in model.feature_means_],
        },
        "calibration": list(getattr(model, "calibration_", None) or []) or None,
        "feature_names": list(feature_names) if feature_names else None,
        "seed": model.seed,
        "hyperparameters": model.get_params(),
    }
    return doc


def model_from_dict(doc: dict):
    kind = doc["kind"]
    hyper = dict(doc.get("hyperparameters") or {})
    model = make_model(kind, **hyper)
    model.coef_ = np.asarray(doc["coefficients"], dtype=np.float64)
    model.intercept_ = float(doc["intercept"])
    std = doc["standardizer"]
    model.feature_means_ = np.asarray(std["means"], dtype=np.float64)
    model.feature_stds_ = np.asarray(std["stds"], dtype=np.float64)
    model.n_features_in_ = len(model.coef_)
    model.classes_ = np.array([0, 1])
    if doc.get("calibration"):
        model.calibration_ = tuple(doc["calibration"])
    return model


def save_model(model, path, feature_names=None):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(model_to_dict(model, feature_names), fh, indent=1)
        fh.write("\n")


def load_model(path):
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    return model_from_dict(doc), doc.get("feature_names")

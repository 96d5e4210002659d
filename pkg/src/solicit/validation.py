"""Input validation helpers used by the estimator-facing modules.

Missing feature values are represented as NaN throughout; estimators
impute them from training-set means.
"""

from __future__ import annotations

import numpy as np

from .errors import ContractError, DataError


def check_feature_matrix(X, n_features=None, allow_nan=True) -> np.ndarray:
    """Coerce X to a 2-D float64 array, NaN allowed for missing entries."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim == 1:
        X = X.reshape(1, -1)
    if X.ndim != 2:
        raise ContractError(f"expected a 2-D feature matrix, got ndim={X.ndim}")
    if n_features is not None and X.shape[1] != n_features:
        raise ContractError(
            f"feature length mismatch: expected {n_features}, got {X.shape[1]}"
        )
    if not allow_nan and np.isnan(X).any():
        raise DataError("feature matrix contains NaN where none are allowed")
    if np.isinf(X).any():
        raise DataError("feature matrix contains non-finite values")
    return X


def check_labels(y, n_rows=None) -> np.ndarray:
    """Coerce labels to a 0/1 int array."""
    y = np.asarray(y)
    if y.ndim != 1:
        raise ContractError("labels must be a 1-D array")
    if n_rows is not None and y.shape[0] != n_rows:
        raise ContractError(f"label length {y.shape[0]} != row count {n_rows}")
    uniq = np.unique(y)
    if not np.all(np.isin(uniq, (0, 1))):
        raise DataError(f"labels must be 0/1, got values {uniq}")
    return y.astype(np.int64)


def check_sample_weight(w, n_rows) -> np.ndarray:
    """Coerce sample weights to a positive float array."""
    w = np.asarray(w, dtype=np.float64)
    if w.shape != (n_rows,):
        raise ContractError(f"sample_weight shape {w.shape} != ({n_rows},)")
    if not np.all(np.isfinite(w)) or np.any(w <= 0):
        raise DataError("sample weights must be finite and strictly positive")
    return w

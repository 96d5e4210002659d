"""Interval-based candidate selection over probability-ranked lists.

The training set is ranked by predicted probability and scanned
exhaustively for the contiguous rank interval with the highest
empirical response rate, subject to a minimum-size constraint (the
length floor is what keeps noisy short intervals at the top of the
ranking out of consideration). The chosen interval is then mapped onto
a new candidate ranking by percentile. Two baselines are provided:
thresholded binary classification and plain top-K.

Rate comparisons use integer cross-multiplication, so interval search
is exact and independent of floating-point rounding.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, asdict

import numpy as np

from .errors import ConstraintError, ContractError
from .validation import check_feature_matrix


@dataclass(frozen=True)
class RankedEntry:
    candidate_id: str
    probability: float
    label: int | None = None


@dataclass(frozen=True)
class Constraints:
    """Interval-selection knobs.

    min_fraction/min_length set the interval length floor
    L = max(ceil(min_fraction*n), min_length). Intervals shorter than L
    are never candidates, which already excludes short intervals at the
    top of the ranking; top_exclusion_fraction records the size of that
    protected top region for reporting.
    """

    min_fraction: float = 0.05
    min_length: int = 1
    top_exclusion_fraction: float = 0.05

    def floor_length(self, n: int) -> int:
        length = max(math.ceil(self.min_fraction * n), self.min_length, 1)
        if length > n:
            raise ConstraintError(
                f"minimum interval length {length} exceeds list size {n}"
            )
        return length


def rank_candidates(model, X, ids, labels=None) -> list[RankedEntry]:
    """Rank by predicted probability, descending; ties by id ascending."""
    X = check_feature_matrix(X)
    if len(ids) != X.shape[0]:
        raise ContractError("ids length != row count")
    if X.shape[0] == 0:
        return []
    probs = model.predict_proba(X)[:, 1]
    label_at = (lambda i: int(labels[i])) if labels is not None else (lambda i: None)
    entries = [
        RankedEntry(candidate_id=str(ids[i]), probability=float(probs[i]), label=label_at(i))
        for i in range(X.shape[0])
    ]
    entries.sort(key=lambda e: (-e.probability, e.candidate_id))
    return entries


def select_interval_train(ranked: list[RankedEntry], constraints: Constraints):
    """Best-rate interval [i, j] (1-indexed, inclusive) over a labeled ranking.

    Ties prefer the smaller i, then the longer interval.
    """
    n = len(ranked)
    if n == 0:
        raise ConstraintError("cannot select an interval from an empty list")
    if any(e.label is None for e in ranked):
        raise ContractError("training interval selection requires labels")
    L = constraints.floor_length(n)
    prefix = np.zeros(n + 1, dtype=np.int64)
    np.cumsum([e.label for e in ranked], out=prefix[1:])
    lengths = np.arange(1, n + 1, dtype=np.int64)

    # Ratios of integers bounded by n are separated by at least 1/n^2,
    # far above float64 rounding error, so float comparison of rates
    # within one i is exact; the cross-i comparison uses cross products.
    best = None  # (positives, length, i, j)
    for i in range(1, n - L + 2):
        pos = prefix[i + L - 1 :] - prefix[i - 1]
        lens = lengths[L - 1 : L - 1 + pos.shape[0]]
        rates = pos / lens
        k = int(np.flatnonzero(rates == rates.max())[-1])  # tie: longer wins
        cand = (int(pos[k]), int(lens[k]), i, i + L - 1 + k)
        if best is None or cand[0] * best[1] > best[0] * cand[1]:
            best = cand
    pos_count, length, i, j = best
    return i, j, pos_count / length


def map_interval(i_r: int, j_r: int, n: int, m: int):
    """Percentile-map a training interval onto a list of size m.

    Rounds half up, clamps to [1, m], and repairs inverted endpoints.
    """
    if not (1 <= i_r <= j_r <= n) or m < 1:
        raise ContractError(f"invalid interval [{i_r}, {j_r}] for n={n}, m={m}")

    def rhu(num, den):
        return (2 * num + den) // (2 * den)

    i_s = min(max(1, rhu(i_r * m, n)), m)
    j_s = min(max(1, rhu(j_r * m, n)), m)
    if i_s > j_s:
        i_s = j_s
    return i_s, j_s


@dataclass
class IntervalSelection:
    train_interval: tuple[int, int]
    train_rate: float
    test_interval: tuple[int, int]
    selected_ids: list[str]
    constraints: Constraints

    def as_dict(self):
        return {
            "train_interval": list(self.train_interval),
            "train_rate": self.train_rate,
            "test_interval": list(self.test_interval),
            "selected_ids": list(self.selected_ids),
            "constraints": asdict(self.constraints),
        }

    def write_json(self, path):
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.as_dict(), fh, indent=1)
            fh.write("\n")


def recommend(model, train_X, train_y, train_ids, cand_X, cand_ids, constraints=None) -> IntervalSelection:
    """Rank both sets, pick the best training interval, map it by percentile."""
    constraints = constraints or Constraints()
    ranked_train = rank_candidates(model, train_X, train_ids, labels=train_y)
    if not ranked_train:
        raise ConstraintError("training set is empty")
    i_r, j_r, rate = select_interval_train(ranked_train, constraints)
    ranked_test = rank_candidates(model, cand_X, cand_ids)
    if not ranked_test:
        raise ConstraintError("candidate set is empty")
    i_s, j_s = map_interval(i_r, j_r, len(ranked_train), len(ranked_test))
    selected = [e.candidate_id for e in ranked_test[i_s - 1 : j_s]]
    return IntervalSelection(
        train_interval=(i_r, j_r),
        train_rate=rate,
        test_interval=(i_s, j_s),
        selected_ids=selected,
        constraints=constraints,
    )


def baseline_binary(model, X, ids) -> list[str]:
    """Everyone classified a responder (p >= 0.5)."""
    ranked = rank_candidates(model, X, ids)
    return [e.candidate_id for e in ranked if e.probability >= 0.5]


def baseline_topk(model, X, ids, k: int) -> list[str]:
    """The k highest-probability candidates."""
    ranked = rank_candidates(model, X, ids)
    if not 1 <= k <= len(ranked):
        raise ContractError(f"k={k} out of range for {len(ranked)} candidates")
    return [e.candidate_id for e in ranked[:k]]


@dataclass(frozen=True)
class SelectionEvaluation:
    response_rate: float
    recall: float
    selected_count: int
    responders_selected: int
    total_responders: int
    zero_selection: bool = False

    def as_dict(self):
        return asdict(self)


def evaluate_selection(selected_ids, labels: dict) -> SelectionEvaluation:
    """Achieved response rate and recommendation recall for a selection."""
    unknown = [cid for cid in selected_ids if cid not in labels]
    if unknown:
        raise ContractError(f"selection contains unlabeled candidates: {unknown[:3]}")
    responders_selected = sum(int(labels[cid]) for cid in selected_ids)
    total_responders = sum(int(v) for v in labels.values())
    selected_count = len(selected_ids)
    zero = selected_count == 0
    return SelectionEvaluation(
        response_rate=0.0 if zero else responders_selected / selected_count,
        recall=0.0 if total_responders == 0 else responders_selected / total_responders,
        selected_count=selected_count,
        responders_selected=responders_selected,
        total_responders=total_responders,
        zero_selection=zero,
    )


@dataclass(frozen=True)
class SweepRow:
    size_fraction: float
    interval: tuple[int, int]
    response_rate: float
    recall: float


def interval_size_sweep(ranked: list[RankedEntry], sizes=(0.25, 0.5, 0.75, 1.0)) -> list[SweepRow]:
    """Best training interval under a minimum-size constraint, per size.

    Growing the size shrinks the feasible set, so the achieved rate is
    non-increasing; any optimal larger interval must beat an extension
    of the smaller optimum, so the positives captured (recall) are
    non-decreasing.
    """
    labels = {e.candidate_id: e.label for e in ranked}
    rows = []
    for size in sizes:
        constraints = Constraints(min_fraction=size, min_length=1)
        i, j, rate = select_interval_train(ranked, constraints)
        selected = [e.candidate_id for e in ranked[i - 1 : j]]
        ev = evaluate_selection(selected, labels)
        rows.append(
            SweepRow(size_fraction=size, interval=(i, j), response_rate=rate, recall=ev.recall)
        )
    return rows

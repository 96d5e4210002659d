"""Feature extraction: the willingness/readiness representation of a user.

Groups, in fixed order: responsiveness (7), profile (1), one score per
lexicon category, one score per coefficient trait, activity (4),
readiness (4). With the shipped 68-category lexicon and 35-trait table
the vector has 16 + 68 + 35 = 119 entries.

Features that are undefined for a user (e.g. response-time statistics
with no past responses) are masked rather than zero-filled; models
impute them from training-set means.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .corpus import Corpus, InteractionSummary, PostRecord, UserRecord, derive_interactions
from .errors import ConfigurationError
from .lexicon import CategoryLexicon, TraitCoefficients, count_matches, tokenize

RESPONSIVENESS_NAMES = (
    "MeanResponseTime",
    "MedianResponseTime",
    "ModeResponseTime",
    "MaxResponseTime",
    "MinResponseTime",
    "PastResponseRate",
    "Proactiveness",
)
ACTIVITY_NAMES = ("MsgCount", "DailyMsgCount", "RetweetRatio", "DailyRetweetRatio")
READINESS_NAMES = (
    "TweetingLikelihoodOfDay",
    "TweetingLikelihoodOfHour",
    "TweetingSteadiness",
    "TweetingInactivity",
)

SECONDS_PER_DAY = 86400


@dataclass
class FeatureVector:
    names: list[str]
    values: np.ndarray
    missing_mask: np.ndarray
    query_time: int

    def as_row(self) -> np.ndarray:
        """Values with masked entries as NaN, ready for a feature matrix."""
        row = self.values.astype(np.float64).copy()
        row[self.missing_mask] = np.nan
        return row


@dataclass
class FeatureConfig:
    lexicon: CategoryLexicon
    coefficients: TraitCoefficients
    steadiness_window: int = 20
    post_cap: int = 200

    def feature_names(self) -> list[str]:
        names = list(RESPONSIVENESS_NAMES)
        names.append("CountSocialWords")
        names.extend(self.lexicon.category_names)
        names.extend(self.coefficients.trait_names)
        names.extend(ACTIVITY_NAMES)
        names.extend(READINESS_NAMES)
        if len(set(names)) != len(names):
            raise ConfigurationError("feature names collide across groups")
        return names


class _Group:
    """Accumulates (value, masked) pairs for one feature group."""

    def __init__(self):
        self.values: list[float] = []
        self.mask: list[bool] = []

    def add(self, value):
        if value is None:
            self.values.append(0.0)
            self.mask.append(True)
        else:
            self.values.append(float(value))
            self.mask.append(False)


def responsiveness_features(summary: InteractionSummary) -> tuple[list[float], list[bool]]:
    """Five response-time statistics plus past response rate and proactiveness."""
    g = _Group()
    lat = summary.response_latencies
    if lat:
        arr = np.asarray(lat, dtype=np.float64)
        g.add(float(arr.mean()))
        g.add(float(np.median(arr)))
        g.add(_mode_minutes(lat))
        g.add(float(arr.max()))
        g.add(float(arr.min()))
    else:
        for _ in range(5):
            g.add(None)
    if summary.direct_questions_received > 0:
        g.add(summary.responses_to_direct / summary.direct_questions_received)
    else:
        g.add(None)
    if summary.indirect_questions_exposed > 0:
        g.add(summary.responses_to_indirect / summary.indirect_questions_exposed)
    else:
        g.add(None)
    return g.values, g.mask


def _mode_minutes(latencies) -> float:
    """Mode of latencies bucketed to whole minutes; ties pick the smallest bucket."""
    buckets: dict[int, int] = {}
    for lat in latencies:
        b = int(lat // 60)
        buckets[b] = buckets.get(b, 0) + 1
    best = min(buckets, key=lambda b: (-buckets[b], b))
    return float(best * 60)


def profile_social_words(profile_text: str, lexicon: CategoryLexicon) -> int:
    """Raw count of profile tokens matching the `social` category."""
    if "social" not in lexicon.categories:
        raise ConfigurationError("lexicon has no `social` category")
    stream = tokenize(profile_text)
    return count_matches(stream, lexicon)["social"]


def liwc_scores(timeline: list[PostRecord], lexicon: CategoryLexicon) -> dict[str, float] | None:
    """Per-category token fraction over the user's own (non-retweet) posts.

    Returns None when the user has no own words at all (scores undefined).
    """
    tokens: list[str] = []
    for post in timeline:
        if post.is_retweet:
            continue
        tokens.extend(tokenize(post.text).tokens)
    total = len(tokens)
    if total == 0:
        return None
    counts = dict.fromkeys(lexicon.categories, 0)
    for token in tokens:
        for name in lexicon.token_categories(token):
            counts[name] += 1
    return {name: counts[name] / total for name in lexicon.categories}


def big5_scores(liwc: dict[str, float], coeffs: TraitCoefficients) -> dict[str, float]:
    """Weighted sums of category scores, one per trait/facet."""
    return {
        trait: sum(weight * liwc[cat] for cat, weight in table.items())
        for trait, table in coeffs.traits.items()
    }


def activity_features(timeline: list[PostRecord]) -> tuple[list[float], list[bool]]:
    """Post volume and retweeting behavior over the timeline span."""
    g = _Group()
    n = len(timeline)
    g.add(float(n))
    if n == 0:
        for _ in range(3):
            g.add(None)
        return g.values, g.mask
    span = timeline[-1].timestamp - timeline[0].timestamp
    active_days = max(1, math.ceil(span / SECONDS_PER_DAY))
    retweets = sum(1 for p in timeline if p.is_retweet)
    g.add(n / active_days)
    g.add(retweets / n)
    g.add(retweets / active_days)
    return g.values, g.mask


def readiness_features(
    timeline: list[PostRecord], query_time: int, window: int = 20
) -> tuple[list[float], list[bool]]:
    """Day/hour posting likelihood, posting steadiness, and inactivity."""
    g = _Group()
    n = len(timeline)
    if n == 0:
        g.add(None)
        g.add(None)
    else:
        q_day = _utc_weekday(query_time)
        q_hour = _utc_hour(query_time)
        day_count = sum(1 for p in timeline if _utc_weekday(p.timestamp) == q_day)
        hour_count = sum(1 for p in timeline if _utc_hour(p.timestamp) == q_hour)
        g.add(day_count / n)
        g.add(hour_count / n)

    recent = timeline[-window:]
    if len(recent) < 3:
        g.add(None)
    else:
        gaps = np.diff([p.timestamp for p in recent]).astype(np.float64)
        sigma = max(float(gaps.std()), 1.0)
        g.add(1.0 / sigma)

    if n == 0:
        g.add(None)
    else:
        g.add(max(0, query_time - timeline[-1].timestamp))
    return g.values, g.mask


def _utc_weekday(ts: int) -> int:
    # Monday = 0, matching datetime.weekday(); 1970-01-01 was a Thursday.
    return (ts // SECONDS_PER_DAY + 3) % 7


def _utc_hour(ts: int) -> int:
    return (ts % SECONDS_PER_DAY) // 3600


def visible_timeline(corpus: Corpus, user_id: str, query_time: int, post_cap: int) -> list[PostRecord]:
    """The most recent `post_cap` posts at or before query_time."""
    posts = [p for p in corpus.timeline(user_id) if p.timestamp <= query_time]
    if post_cap and len(posts) > post_cap:
        posts = posts[-post_cap:]
    return posts


def extract_features(
    user: UserRecord, corpus: Corpus, query_time: int, config: FeatureConfig
) -> FeatureVector:
    """Full feature vector for one user at one query time. Deterministic."""
    timeline = visible_timeline(corpus, user.user_id, query_time, config.post_cap)
    values: list[float] = []
    mask: list[bool] = []

    vals, msk = responsiveness_features(derive_interactions(corpus, user))
    values.extend(vals)
    mask.extend(msk)

    # no profile text means the feature is undefined, not zero
    values.append(float(profile_social_words(user.profile_text, config.lexicon)))
    mask.append(not user.profile_text.strip())

    liwc = liwc_scores(timeline, config.lexicon)
    if liwc is None:
        k = len(config.lexicon.categories) + len(config.coefficients.traits)
        values.extend([0.0] * k)
        mask.extend([True] * k)
    else:
        for name in config.lexicon.category_names:
            values.append(liwc[name])
            mask.append(False)
        traits = big5_scores(liwc, config.coefficients)
        for name in config.coefficients.trait_names:
            values.append(traits[name])
            mask.append(False)

    vals, msk = activity_features(timeline)
    if not timeline:
        # a user with no visible posts has no activity record at all
        msk = [True] * len(vals)
    values.extend(vals)
    mask.extend(msk)

    vals, msk = readiness_features(timeline, query_time, config.steadiness_window)
    values.extend(vals)
    mask.extend(msk)

    return FeatureVector(
        names=config.feature_names(),
        values=np.asarray(values, dtype=np.float64),
        missing_mask=np.asarray(mask, dtype=bool),
        query_time=query_time,
    )


def write_feature_csv(path, rows, names, labels=None, ids=None, query_times=None):
    """Feature matrix CSV: id columns, named feature columns (missing cells
    empty), and a trailing `responded` column when labels are given."""
    rows = np.asarray(rows, dtype=np.float64)
    header = ["user_id", "query_time", *names]
    if labels is not None:
        header.append("responded")
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for i in range(rows.shape[0]):
            rec = [
                ids[i] if ids is not None else str(i),
                query_times[i] if query_times is not None else "",
            ]
            rec.extend("" if np.isnan(v) else repr(float(v)) for v in rows[i])
            if labels is not None:
                rec.append(int(labels[i]))
            writer.writerow(rec)


def read_feature_csv(path):
    """Inverse of write_feature_csv.

    Returns (ids, query_times, names, X with NaN for missing, labels or None).
    """
    with open(path, "r", newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        has_labels = header and header[-1] == "responded"
        names = header[2 : -1 if has_labels else len(header)]
        ids, qts, data, labels = [], [], [], []
        for rec in reader:
            ids.append(rec[0])
            qts.append(int(rec[1]) if rec[1] else 0)
            stop = -1 if has_labels else len(rec)
            data.append([float(v) if v else math.nan for v in rec[2:stop]])
            if has_labels:
                labels.append(int(rec[-1]))
    X = np.asarray(data, dtype=np.float64) if data else np.empty((0, len(names)))
    y = np.asarray(labels, dtype=np.int64) if has_labels else None
    return ids, qts, names, X, y

"""Feature significance testing and named feature subsets.

Continuous features are discretized into quantile bins (masked values
form their own bin), tested against the response label with a Pearson
chi-square statistic, and screened with a Bonferroni-corrected
threshold. The p-value routine implements the regularized upper
incomplete gamma function directly so it can be checked against a
high-precision oracle.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, DataError
from .validation import check_labels

TOP4_FEATURES = (
    "communication",
    "PastResponseRate",
    "TweetingInactivity",
    "TweetingLikelihoodOfDay",
)
COMMON_SIGNIFICANT_FEATURES = (
    "PastResponseRate",
    "TweetingInactivity",
    "Excitement-Seeking",
    "Cautiousness",
    "DailyMsgCount",
)
SUBSET_NAMES = ("all", "significant", "top10_significant", "top4", "common_significant")


def regularized_upper_gamma(s: float, x: float) -> float:
    """Q(s, x) = Gamma(s, x) / Gamma(s), the upper tail of the gamma CDF.

    Series expansion below x < s + 1, Lentz continued fraction above.
    """
    if s <= 0 or x < 0:
        raise ValueError(f"Q(s, x) requires s > 0 and x >= 0, got s={s}, x={x}")
    if x == 0:
        return 1.0
    log_prefactor = -x + s * math.log(x) - math.lgamma(s)
    if x < s + 1.0:
        # P(s,x) series: sum_n x^n / (s (s+1) ... (s+n))
        term = 1.0 / s
        total = term
        n = 0
        while True:
            n += 1
            term *= x / (s + n)
            total += term
            if abs(term) < abs(total) * 1e-16:
                break
            if n > 10000:
                raise ArithmeticError("gamma series failed to converge")
        return max(0.0, min(1.0, 1.0 - math.exp(log_prefactor) * total))
    # continued fraction for Q(s,x) (modified Lentz)
    tiny = 1e-300
    b = x + 1.0 - s
    c = 1.0 / tiny
    d = 1.0 / b if b != 0 else 1.0 / tiny
    h = d
    for i in range(1, 10001):
        an = -i * (i - s)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    else:
        raise ArithmeticError("gamma continued fraction failed to converge")
    return max(0.0, min(1.0, math.exp(log_prefactor) * h))


def chi_square_pvalue(statistic: float, df: int) -> float:
    return regularized_upper_gamma(df / 2.0, statistic / 2.0)


@dataclass(frozen=True)
class ChiSquareResult:
    statistic: float
    df: int
    p_value: float
    bins_used: int
    degenerate: bool = False

    @classmethod
    def skipped(cls):
        return cls(statistic=math.nan, df=0, p_value=math.nan, bins_used=1, degenerate=True)


def _discretize(column, bins):
    """Quantile-bin indices for a column; NaN entries get a dedicated bin."""
    col = np.asarray(column, dtype=np.float64)
    masked = np.isnan(col)
    observed = col[~masked]
    idx = np.zeros(len(col), dtype=np.int64)
    n_value_bins = 0
    if observed.size:
        edges = np.unique(np.quantile(observed, [j / bins for j in range(1, bins)]))
        idx[~masked] = np.searchsorted(edges, observed, side="left")
        n_value_bins = len(edges) + 1
    if masked.any():
        idx[masked] = n_value_bins
        n_value_bins += 1
    return idx, n_value_bins


def chi_square_feature(column, labels, bins=4) -> ChiSquareResult:
    """Pearson chi-square of (binned feature) x (label)."""
    y = check_labels(labels, len(column))
    if len(np.unique(y)) < 2:
        raise DataError("chi-square test needs both classes present")
    idx, n_bins = _discretize(column, bins)
    table = np.zeros((n_bins, 2), dtype=np.float64)
    np.add.at(table, (idx, y), 1.0)
    table = table[table.sum(axis=1) > 0]
    effective = table.shape[0]
    if effective < 2:
        return ChiSquareResult.skipped()
    row = table.sum(axis=1, keepdims=True)
    col = table.sum(axis=0, keepdims=True)
    expected = row @ col / table.sum()
    statistic = float(((table - expected) ** 2 / expected).sum())
    df = effective - 1
    return ChiSquareResult(
        statistic=statistic,
        df=df,
        p_value=chi_square_pvalue(statistic, df),
        bins_used=effective,
    )


@dataclass(frozen=True)
class FeatureTest:
    name: str
    statistic: float
    df: int
    p_value: float
    significant: bool
    degenerate: bool


@dataclass
class SignificanceReport:
    tests: list[FeatureTest]
    alpha: float
    tested_count: int
    threshold: float
    fdr: float
    fdr_defined: bool
    bins: int

    @property
    def significant_names(self) -> list[str]:
        return [t.name for t in self.tests if t.significant]

    def as_dict(self):
        return {
            "alpha": self.alpha,
            "tested_count": self.tested_count,
            "bonferroni_threshold": self.threshold,
            "estimated_fdr": self.fdr if self.fdr_defined else 0.0,
            "fdr_defined": self.fdr_defined,
            "bins": self.bins,
            "features": [
                {
                    "feature": t.name,
                    "chi2": None if t.degenerate else t.statistic,
                    "df": None if t.degenerate else t.df,
                    "p": None if t.degenerate else t.p_value,
                    "significant": t.significant,
                    "degenerate": t.degenerate,
                }
                for t in self.tests
            ],
        }

    def write_csv(self, path):
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["feature", "chi2", "df", "p", "significant"])
            for t in self.tests:
                if t.degenerate:
                    writer.writerow([t.name, "", "", "", "False"])
                else:
                    writer.writerow(
                        [t.name, repr(t.statistic), t.df, repr(t.p_value), str(t.significant)]
                    )

    def write_json(self, path):
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.as_dict(), fh, indent=1)
            fh.write("\n")


def significance_report(X, y, feature_names, alpha=0.05, bins=4) -> SignificanceReport:
    """Per-feature chi-square tests with a Bonferroni threshold alpha/m.

    The reported FDR is the Benjamini-Hochberg plug-in estimate
    (largest rejected p) * m / (#rejected).
    """
    X = np.asarray(X, dtype=np.float64)
    y = check_labels(y, X.shape[0])
    if X.shape[1] != len(feature_names):
        raise ConfigurationError("feature_names length != column count")
    results = [chi_square_feature(X[:, j], y, bins=bins) for j in range(X.shape[1])]
    m = sum(1 for r in results if not r.degenerate)
    threshold = alpha / m if m else 0.0
    tests = [
        FeatureTest(
            name=feature_names[j],
            statistic=r.statistic,
            df=r.df,
            p_value=r.p_value,
            significant=(not r.degenerate) and r.p_value < threshold,
            degenerate=r.degenerate,
        )
        for j, r in enumerate(results)
    ]
    rejected = [t.p_value for t in tests if t.significant]
    if rejected:
        fdr = min(1.0, max(rejected) * m / len(rejected))
        fdr_defined = True
    else:
        fdr = 0.0
        fdr_defined = False
    return SignificanceReport(
        tests=tests,
        alpha=alpha,
        tested_count=m,
        threshold=threshold,
        fdr=fdr,
        fdr_defined=fdr_defined,
        bins=bins,
    )


@dataclass(frozen=True)
class FeatureSubset:
    name: str
    features: tuple[str, ...]

    def write(self, path):
        with open(path, "w", encoding="utf-8") as fh:
            for feature in self.features:
                fh.write(feature + "\n")


def build_subset(name: str, report: SignificanceReport | None, feature_names) -> FeatureSubset:
    """Named feature subsets used by the recommendation experiments."""
    names = list(feature_names)
    if name == "all":
        return FeatureSubset(name, tuple(names))
    if name in ("top4", "common_significant"):
        fixed = TOP4_FEATURES if name == "top4" else COMMON_SIGNIFICANT_FEATURES
        missing = [f for f in fixed if f not in names]
        if missing:
            raise ConfigurationError(f"subset {name!r} needs features absent here: {missing}")
        return FeatureSubset(name, tuple(fixed))
    if report is None:
        raise ConfigurationError(f"subset {name!r} requires a significance report")
    if name == "significant":
        return FeatureSubset(name, tuple(report.significant_names))
    if name == "top10_significant":
        rejected = [t for t in report.tests if t.significant]
        if len(rejected) < 10:
            raise DataError(
                f"top10_significant needs >= 10 rejected features, found {len(rejected)}"
            )
        rejected.sort(key=lambda t: (t.p_value, t.name))
        return FeatureSubset(name, tuple(t.name for t in rejected[:10]))
    raise ConfigurationError(f"unknown subset {name!r}; expected one of {SUBSET_NAMES}")

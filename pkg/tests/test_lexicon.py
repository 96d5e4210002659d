import json

import pytest
from hypothesis import given, strategies as st

from solicit.errors import ConfigurationError, FormatError
from solicit.lexicon import (
    CategoryLexicon,
    TokenStream,
    count_matches,
    load_coefficients,
    load_lexicon,
    tokenize,
)


def write_lexicon(tmp_path, payload, name="lex.json"):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return path


class TestLoadLexicon:
    def test_basic_load(self, tmp_path):
        lex = load_lexicon(write_lexicon(tmp_path, {"social": ["talk*", "friend"]}))
        assert lex.category_names == ["social"]
        assert len(lex.categories["social"]) == 2

    def test_star_in_middle_rejected(self, tmp_path):
        with pytest.raises(FormatError):
            load_lexicon(write_lexicon(tmp_path, {"x": ["a*b"]}))

    def test_empty_category_rejected(self, tmp_path):
        with pytest.raises(FormatError):
            load_lexicon(write_lexicon(tmp_path, {"x": []}))

    def test_patterns_lowercased(self, tmp_path):
        lex = load_lexicon(write_lexicon(tmp_path, {"x": ["Talk*", "FRIEND"]}))
        assert lex.categories["x"] == ["talk*", "friend"]

    def test_shipped_lexicon_has_68_categories(self, full_lexicon):
        assert len(full_lexicon.categories) == 68
        assert "social" in full_lexicon.categories
        assert "communication" in full_lexicon.categories


class TestCoefficients:
    def test_shipped_coefficients_have_35_traits(self, full_lexicon, full_coefficients):
        assert len(full_coefficients.traits) == 35
        assert "Excitement-Seeking" in full_coefficients.traits
        assert "Cautiousness" in full_coefficients.traits

    def test_unknown_category_rejected(self, tmp_path, full_lexicon):
        path = tmp_path / "coeffs.json"
        path.write_text(json.dumps({"Extraversion": {"not_a_category": 0.5}}))
        with pytest.raises(ConfigurationError, match="not_a_category"):
            load_coefficients(path, full_lexicon)


class TestTokenize:
    def test_urls_mentions_hashtags(self):
        stream = tokenize("Talking to @bob about #food http://x.co")
        assert stream.tokens == ("talking", "to", "about", "food")
        assert stream.total_count == 4

    def test_empty(self):
        assert tokenize("").tokens == ()
        assert tokenize("").total_count == 0

    def test_apostrophes_kept(self):
        assert tokenize("don't stop").tokens == ("don't", "stop")

    def test_digits_kept(self):
        assert tokenize("gate b42 in 10 minutes").tokens == ("gate", "b42", "in", "10", "minutes")

    def test_www_urls_removed(self):
        assert tokenize("see www.example.com/page now").tokens == ("see", "now")

    @given(st.text())
    def test_deterministic(self, text):
        assert tokenize(text) == tokenize(text)

    @given(st.text())
    def test_tokens_lowercase_and_clean(self, text):
        for token in tokenize(text).tokens:
            assert token == token.lower()
            assert all(c.isalnum() or c == "'" for c in token)


class TestCountMatches:
    def test_counts(self):
        lex = CategoryLexicon(categories={"social": ["talk*", "friend"]})
        stream = TokenStream(tokens=("talking", "friend", "code"))
        assert count_matches(stream, lex) == {"social": 2}

    def test_empty_stream(self):
        lex = CategoryLexicon(categories={"social": ["talk*"], "work": ["job"]})
        assert count_matches(TokenStream(tokens=()), lex) == {"social": 0, "work": 0}

    def test_stem_matches_itself(self):
        lex = CategoryLexicon(categories={"social": ["talk*"]})
        assert count_matches(TokenStream(tokens=("talk",)), lex) == {"social": 1}

    def test_token_counts_in_multiple_categories(self):
        lex = CategoryLexicon(categories={"a": ["talk*"], "b": ["talking"]})
        counts = count_matches(TokenStream(tokens=("talking",)), lex)
        assert counts == {"a": 1, "b": 1}

    @given(st.lists(st.sampled_from(["talk", "talking", "friend", "code", "x"]), max_size=30))
    def test_monotone_in_tokens(self, tokens):
        lex = CategoryLexicon(categories={"social": ["talk*", "friend"]})
        base = count_matches(TokenStream(tokens=tuple(tokens)), lex)
        extended = count_matches(TokenStream(tokens=tuple(tokens) + ("talk",)), lex)
        assert extended["social"] >= base["social"]

    @given(
        st.text(alphabet="abc'", min_size=1, max_size=8),
        st.text(alphabet="abc", min_size=1, max_size=4),
    )
    def test_prefix_pattern_soundness(self, token, stem):
        lex = CategoryLexicon(categories={"cat": [stem + "*"]})
        counts = count_matches(TokenStream(tokens=(token,)), lex)
        assert (counts["cat"] == 1) == token.startswith(stem)

"""Category word lexicons, trait coefficient tables, and tokenization.

The lexicon file format is a JSON object mapping category names to
pattern lists. A pattern is either a literal lowercase word or a stem
ending in '*', which matches any token with that prefix. Default data
files (a 68-category lexicon, a 35-trait coefficient table) ship with
the package; a user-supplied lexicon in the same format can replace
them.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .errors import ConfigurationError, FormatError

_URL_RE = re.compile(r"(?:https?://|www\.)\S+", re.IGNORECASE)
_MENTION_RE = re.compile(r"@\w+")
_SPLIT_RE = re.compile(r"[^a-z0-9']+")


@dataclass(frozen=True)
class TokenStream:
    tokens: tuple[str, ...]

    @property
    def total_count(self) -> int:
        return len(self.tokens)


@dataclass
class CategoryLexicon:
    """Compiled category patterns with a token-level match cache."""

    categories: dict[str, list[str]]
    _literals: dict[str, frozenset[str]] = field(default_factory=dict, repr=False)
    _prefixes: dict[str, tuple[str, ...]] = field(default_factory=dict, repr=False)
    _token_cache: dict[str, tuple[str, ...]] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        for name, patterns in self.categories.items():
            literals = frozenset(p for p in patterns if not p.endswith("*"))
            # longest stems first so the most specific prefix is tried early
            prefixes = tuple(
                sorted((p[:-1] for p in patterns if p.endswith("*")), key=len, reverse=True)
            )
            self._literals[name] = literals
            self._prefixes[name] = prefixes

    @property
    def category_names(self) -> list[str]:
        return list(self.categories)

    def token_categories(self, token: str) -> tuple[str, ...]:
        """Categories matched by one token; a token may match several."""
        cached = self._token_cache.get(token)
        if cached is not None:
            return cached
        matched = tuple(
            name
            for name in self.categories
            if token in self._literals[name]
            or any(token.startswith(stem) for stem in self._prefixes[name])
        )
        self._token_cache[token] = matched
        return matched


@dataclass(frozen=True)
class TraitCoefficients:
    """Per-trait linear weights over lexicon categories."""

    traits: dict[str, dict[str, float]]

    @property
    def trait_names(self) -> list[str]:
        return list(self.traits)


def _validate_patterns(name: str, patterns) -> list[str]:
    if not isinstance(patterns, list) or not patterns:
        raise FormatError(f"category {name!r} must map to a non-empty pattern array")
    cleaned = []
    for pat in patterns:
        if not isinstance(pat, str) or not pat:
            raise FormatError(f"category {name!r} contains an empty pattern")
        pat = pat.lower()
        if "*" in pat[:-1]:
            raise FormatError(f"pattern {pat!r} in {name!r}: '*' only allowed as final character")
        if pat == "*":
            raise FormatError(f"pattern {pat!r} in {name!r}: empty stem")
        cleaned.append(pat)
    return cleaned


def load_lexicon(path) -> CategoryLexicon:
    """Load and validate a category lexicon from a JSON file."""
    with Path(path).open("r", encoding="utf-8") as fh:
        raw = json.load(fh)
    if not isinstance(raw, dict) or not raw:
        raise FormatError("lexicon file must be a non-empty JSON object")
    categories = {str(name): _validate_patterns(str(name), pats) for name, pats in raw.items()}
    return CategoryLexicon(categories=categories)


def load_coefficients(path, lexicon: CategoryLexicon) -> TraitCoefficients:
    """Load a trait coefficient table, checking every referenced category."""
    with Path(path).open("r", encoding="utf-8") as fh:
        raw = json.load(fh)
    if not isinstance(raw, dict) or not raw:
        raise FormatError("coefficient file must be a non-empty JSON object")
    known = set(lexicon.categories)
    traits: dict[str, dict[str, float]] = {}
    for trait, weights in raw.items():
        if not isinstance(weights, dict) or not weights:
            raise FormatError(f"trait {trait!r} must map to a non-empty category->number object")
        table = {}
        for category, coef in weights.items():
            if category not in known:
                raise ConfigurationError(
                    f"trait {trait!r} references unknown category {category!r}"
                )
            table[str(category)] = float(coef)
        traits[str(trait)] = table
    return TraitCoefficients(traits=traits)


def default_lexicon_path() -> Path:
    return Path(resources.files("solicit.data") / "lexicon.json")


def default_coefficients_path() -> Path:
    return Path(resources.files("solicit.data") / "coefficients.json")


def default_vocabulary_path() -> Path:
    return Path(resources.files("solicit.data") / "vocabulary.json")


def tokenize(text: str) -> TokenStream:
    """Lowercased word tokens: URLs and @-mentions dropped, '#' stripped,
    split on anything that is not a letter, digit, or apostrophe."""
    text = _URL_RE.sub(" ", text)
    text = _MENTION_RE.sub(" ", text)
    text = text.replace("#", " ").lower()
    tokens = tuple(t for t in _SPLIT_RE.split(text) if t and t != "'" and t.strip("'"))
    return TokenStream(tokens=tokens)


def count_matches(tokens: TokenStream, lexicon: CategoryLexicon) -> dict[str, int]:
    """Per-category count of matching tokens; a token may count in several."""
    counts = dict.fromkeys(lexicon.categories, 0)
    for token in tokens.tokens:
        for name in lexicon.token_categories(token):
            counts[name] += 1
    return counts

"""Controlled keyword vocabulary with the macro-category closure rule.

The vocabulary groups specialist terms under macro-categories. Whenever a
term is used as a keyword, its macro-category must accompany it; expansion
adds missing categories, validation reports them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

import yaml


class VocabularyError(Exception):
    pass


class DuplicateTermError(VocabularyError):
    pass


class EmptyCategoryError(VocabularyError):
    pass


class UnknownKeywordError(VocabularyError):
    def __init__(self, keywords: Iterable[str]) -> None:
        self.keywords = sorted(keywords)
        super().__init__(f"unknown keywords: {', '.join(self.keywords)}")


@dataclass(frozen=True)
class KeywordViolation:
    term: str
    missing_category: str

    @property
    def message(self) -> str:
        return (
            f"keyword {self.term!r} requires its macro-category "
            f"{self.missing_category!r} to be present"
        )


@dataclass(frozen=True)
class ControlledVocabulary:
    categories: dict[str, frozenset[str]]
    term_index: dict[str, str]

    def is_term(self, keyword: str) -> bool:
        return keyword in self.term_index

    def is_category(self, keyword: str) -> bool:
        return keyword in self.categories

    def is_known(self, keyword: str) -> bool:
        return self.is_term(keyword) or self.is_category(keyword)


def build_vocabulary(mapping: Mapping[str, Iterable[str]]) -> ControlledVocabulary:
    categories: dict[str, frozenset[str]] = {}
    term_index: dict[str, str] = {}
    for category, terms in mapping.items():
        if not isinstance(category, str) or not category.strip():
            raise EmptyCategoryError("category names must be non-empty strings")
        term_list = list(terms or [])
        if not term_list:
            raise EmptyCategoryError(f"category {category!r} has no terms")
        cleaned: set[str] = set()
        for term in term_list:
            if not isinstance(term, str) or not term.strip():
                raise EmptyCategoryError(f"category {category!r} contains an empty term")
            if term in term_index:
                raise DuplicateTermError(
                    f"term {term!r} is assigned to both {term_index[term]!r} and {category!r}"
                )
            if term in mapping:
                raise DuplicateTermError(
                    f"term {term!r} collides with a category name"
                )
            term_index[term] = category
            cleaned.add(term)
        categories[category] = frozenset(cleaned)
    return ControlledVocabulary(categories=categories, term_index=term_index)


def load_vocabulary(text: str) -> ControlledVocabulary:
    """Parse the vocabulary config: a YAML mapping of category to term list."""
    data = yaml.safe_load(text)
    if data is None:
        return ControlledVocabulary(categories={}, term_index={})
    if not isinstance(data, dict):
        raise VocabularyError("vocabulary config must be a mapping of category to term list")
    return build_vocabulary(data)


def expand_keywords(
    keywords: Iterable[str],
    vocab: ControlledVocabulary,
    strict: bool = False,
) -> frozenset[str]:
    """Add the macro-category of every term present.

    Monotone and idempotent. In strict mode, keywords that are neither a
    term nor a category raise UnknownKeywordError; lenient mode passes them
    through untouched.
    """
    keyword_set = set(keywords)
    if strict:
        unknown = {k for k in keyword_set if not vocab.is_known(k)}
        if unknown:
            raise UnknownKeywordError(unknown)
    expanded = set(keyword_set)
    for keyword in keyword_set:
        category = vocab.term_index.get(keyword)
        if category is not None:
            expanded.add(category)
    return frozenset(expanded)


def validate_keywords(
    keywords: Iterable[str], vocab: ControlledVocabulary
) -> list[KeywordViolation]:
    """One violation per term whose macro-category is missing from the set."""
    keyword_set = set(keywords)
    violations = [
        KeywordViolation(term=k, missing_category=vocab.term_index[k])
        for k in sorted(keyword_set)
        if k in vocab.term_index and vocab.term_index[k] not in keyword_set
    ]
    return violations

"""Filtering and classification of raw reviews into the curated corpus."""

from .categories import CategoryMapping, assign_category
from .lexicon import KeywordLexicon, fuzz_budget
from .matching import match_dimensions
from .pipeline import DenyLists, curate, prevalence
from .rules import Language, detect_language, word_count

__all__ = [
    "KeywordLexicon",
    "fuzz_budget",
    "match_dimensions",
    "CategoryMapping",
    "assign_category",
    "DenyLists",
    "curate",
    "prevalence",
    "Language",
    "detect_language",
    "word_count",
]

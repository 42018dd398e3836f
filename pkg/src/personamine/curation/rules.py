"""Word-count and language rules applied before keyword classification."""

from __future__ import annotations

from enum import Enum

from ..util import normalize_ws, word_tokens

MIN_WORDS_KEPT = 20  # reviews shorter than this many words are dropped

# Fixed 50-word English stopword list used by the language heuristic.
ENGLISH_STOPWORDS = frozenset(
    """
    the a an and or but if then of to in on at by for with about from as is
    am are was were be been it this that these i you he she we they me him
    her them my your our not no so do did have has
    """.split()
)

assert len(ENGLISH_STOPWORDS) == 50


class Language(str, Enum):
    ENGLISH = "english"
    OTHER = "other"


def word_count(body: str) -> int:
    """Number of maximal non-whitespace runs after normalization."""
    return len(normalize_ws(body).split())


def detect_language(body: str) -> Language:
    """English iff >=90% of letters are ASCII and >=2 stopword token hits."""
    letters = [ch for ch in body if ch.isalpha()]
    if not letters:
        return Language.OTHER
    ascii_letters = sum(1 for ch in letters if ch.isascii())
    if ascii_letters / len(letters) < 0.9:
        return Language.OTHER
    hits = sum(1 for tok in word_tokens(body) if tok in ENGLISH_STOPWORDS)
    if hits < 2:
        return Language.OTHER
    return Language.ENGLISH

"""Fuzzy phrase matching between review bodies and the keyword lexicon."""

from __future__ import annotations

from ..kernels import encode_tokens, phrase_in_windows
from ..models import DisabilityDimension
from ..util import match_tokens
from .lexicon import KeywordLexicon


def match_dimensions(body: str, lexicon: KeywordLexicon) -> set[DisabilityDimension]:
    """Dimensions whose lexicon contains a phrase matching some token window.

    A phrase of m tokens matches at window w when every phrase token is within
    its fuzz budget (optimal-string-alignment distance) of the corresponding
    body token. Body tokens are lowercased with edge punctuation stripped.
    """
    tokens = match_tokens(body)
    if not tokens:
        return set()
    body_enc, body_len = encode_tokens(tokens)
    found: set[DisabilityDimension] = set()
    for dim in DisabilityDimension:
        for phrase in lexicon.compiled(dim):
            if phrase_in_windows(body_enc, body_len, phrase.enc, phrase.lens, phrase.budgets):
                found.add(dim)
                break
    return found

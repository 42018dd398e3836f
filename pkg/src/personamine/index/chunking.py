"""Sentence-boundary chunking of curated review bodies.

Chunks tile the normalized body exactly: each span ends where the next
begins, so concatenating chunk texts reproduces the body byte for byte.
Separator whitespace stays attached to the preceding sentence.
"""

from __future__ import annotations

import logging
import re

from ..models import Chunk, CuratedReview

logger = logging.getLogger(__name__)

DEFAULT_MAX_TOKENS = 120
MIN_MAX_TOKENS = 16

_BOUNDARY = re.compile(r"[.!?]+(?:\s+|$)")


def split_sentence_spans(body: str) -> list[tuple[int, int]]:
    """Half-open character spans, one per sentence, covering the whole body."""
    spans: list[tuple[int, int]] = []
    start = 0
    for m in _BOUNDARY.finditer(body):
        end = m.end()
        if end > start:
            spans.append((start, end))
        start = end
    if start < len(body):
        spans.append((start, len(body)))
    return spans


def chunk_review(review: CuratedReview, max_tokens: int = DEFAULT_MAX_TOKENS) -> list[Chunk]:
    """Greedily merge consecutive sentences while the token total stays within
    max_tokens; a single longer sentence becomes its own (flagged) chunk."""
    if not review.kept:
        raise ValueError(f"review {review.review_id} was excluded; refusing to chunk")
    if max_tokens < MIN_MAX_TOKENS:
        raise ValueError(f"max_tokens must be >= {MIN_MAX_TOKENS}, got {max_tokens}")

    body = review.body
    sentences = split_sentence_spans(body)
    merged: list[tuple[int, int]] = []
    cur_start: int | None = None
    cur_tokens = 0
    for start, end in sentences:
        tokens = len(body[start:end].split())
        if cur_start is None:
            cur_start, cur_end, cur_tokens = start, end, tokens
        elif cur_tokens + tokens <= max_tokens:
            cur_end, cur_tokens = end, cur_tokens + tokens
        else:
            merged.append((cur_start, cur_end))
            cur_start, cur_end, cur_tokens = start, end, tokens
    if cur_start is not None:
        merged.append((cur_start, cur_end))

    chunks = []
    for ordinal, (start, end) in enumerate(merged):
        text = body[start:end]
        if len(text.split()) > max_tokens:
            logger.warning(
                "oversize chunk %s#%02d: %d tokens exceed max %d (sentence kept whole)",
                review.review_id, ordinal, len(text.split()), max_tokens,
            )
        chunks.append(
            Chunk(
                chunk_id=f"{review.review_id}#{ordinal:02d}",
                review_id=review.review_id,
                span=(start, end),
                text=text,
                category=review.category,
                dimensions=review.dimensions,
                app_id=review.app.app_id,
            )
        )
    return chunks

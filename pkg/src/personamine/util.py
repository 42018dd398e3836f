"""Small shared helpers: whitespace normalization, tokenizing, timestamps."""

from __future__ import annotations

import re
from datetime import datetime, timezone

_WORD_RE = re.compile(r"[a-z0-9']+")


def normalize_ws(text: str) -> str:
    """Collapse runs of whitespace to single spaces and trim the ends."""
    return " ".join(text.split())


def word_tokens(text: str) -> list[str]:
    """Lowercase word tokens with punctuation stripped (used for matching/embedding)."""
    return _WORD_RE.findall(text.lower())


def match_tokens(text: str) -> list[str]:
    """Whitespace tokens, lowercased, with edge punctuation stripped.

    Keeps inner punctuation (so "can't" survives) while "sickness." compares
    equal to "sickness".
    """
    out = []
    for tok in text.lower().split():
        tok = tok.strip("\"'`.,;:!?()[]{}<>*-_/\\")
        if tok:
            out.append(tok)
    return out


def to_rfc3339(dt: datetime) -> str:
    """UTC timestamp as RFC 3339 with a Z suffix, whole seconds."""
    return dt.astimezone(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def parse_rfc3339(value: str) -> datetime:
    """Parse an RFC 3339 timestamp (Z or numeric offset) into aware UTC."""
    if value.endswith("Z") or value.endswith("z"):
        value = value[:-1] + "+00:00"
    dt = datetime.fromisoformat(value)
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    return dt.astimezone(timezone.utc)


def utcnow() -> datetime:
    return datetime.now(timezone.utc).replace(microsecond=0)

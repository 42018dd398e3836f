"""Independent brute-force oracles used to cross-check production paths.

Everything here is deliberately written from the stated contracts, without
importing the production kernels or search internals.
"""

from __future__ import annotations

import numpy as np


def osa_distance(a: str, b: str) -> int:
    """Full-matrix optimal string alignment distance (transposition = 1 edit)."""
    la, lb = len(a), len(b)
    d = [[0] * (lb + 1) for _ in range(la + 1)]
    for i in range(la + 1):
        d[i][0] = i
    for j in range(lb + 1):
        d[0][j] = j
    for i in range(1, la + 1):
        for j in range(1, lb + 1):
            cost = 0 if a[i - 1] == b[j - 1] else 1
            d[i][j] = min(d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + cost)
            if i > 1 and j > 1 and a[i - 1] == b[j - 2] and a[i - 2] == b[j - 1]:
                d[i][j] = min(d[i][j], d[i - 2][j - 2] + 1)
    return d[la][lb]


def oracle_tokens(text: str) -> list[str]:
    out = []
    for tok in text.lower().split():
        tok = tok.strip("\"'`.,;:!?()[]{}<>*-_/\\")
        if tok:
            out.append(tok)
    return out


def oracle_budget(token: str) -> int:
    if len(token) <= 4:
        return 0
    if len(token) <= 8:
        return 1
    return 2


def brute_match_dimensions(body: str, entries: dict) -> set:
    """Exhaustive window scan over every phrase of every dimension."""
    tokens = oracle_tokens(body)
    found = set()
    for dim, phrases in entries.items():
        for phrase in phrases:
            ptoks = phrase.split()
            m = len(ptoks)
            if m == 0 or m > len(tokens):
                continue
            for w in range(len(tokens) - m + 1):
                if all(
                    osa_distance(tokens[w + j], ptoks[j]) <= oracle_budget(ptoks[j])
                    for j in range(m)
                ):
                    found.add(dim)
                    break
    return found


def brute_search(entries: list[tuple[str, np.ndarray, dict]], query: np.ndarray,
                 flt: dict, k: int) -> list[str]:
    """Exhaustive filtered cosine top-k. entries: (chunk_id, vector, meta).

    meta needs keys: category (str), dimensions (set[str]), app_id (str).
    Ranking: rounded score (12 dp) descending, then chunk_id ascending.
    """
    scored = []
    for chunk_id, vec, meta in entries:
        if "category" in flt and meta["category"] != flt["category"]:
            continue
        if "dimensions" in flt and not (set(meta["dimensions"]) & set(flt["dimensions"])):
            continue
        if "exclude_app" in flt:
            excluded = flt["exclude_app"]
            if isinstance(excluded, str):
                excluded = {excluded}
            if meta["app_id"] in excluded:
                continue
        score = float(np.dot(vec, query))
        scored.append((chunk_id, score))
    scored.sort(key=lambda t: (-round(t[1], 12), t[0]))
    return [chunk_id for chunk_id, _ in scored[:k]]


ORACLE_STOPWORDS = frozenset(
    """
    the a an and or but if then of to in on at by for with about from as is
    am are was were be been it this that these i you he she we they me him
    her them my your our not no so do did have has
    """.split()
)


def recheck_verdict(body: str, entries: dict, ad_patterns: list[str],
                    abuse_patterns: list[str]) -> str | None:
    """Straight-line re-application of the exclusion rule chain.

    Returns the exclusion name or None for kept.
    """
    import re

    norm = " ".join(body.split())
    if len(norm.split()) < 20:
        return "too_short"
    letters = [c for c in norm if c.isalpha()]
    ratio = (sum(1 for c in letters if c.isascii()) / len(letters)) if letters else 0.0
    stop_hits = sum(1 for t in re.findall(r"[a-z0-9']+", norm.lower()) if t in ORACLE_STOPWORDS)
    if ratio < 0.9 or stop_hits < 2:
        return "non_english"
    low = norm.lower()
    if any(p in low for p in ad_patterns):
        return "advertisement"
    if any(p in low for p in abuse_patterns):
        return "abusive"
    if not brute_match_dimensions(norm, entries):
        return "no_disability_signal"
    return None

"""The curate step: apply exclusion rules in fixed order and label survivors."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from ..models import (
    CuratedReview,
    DisabilityDimension,
    Exclusion,
    PrevalenceMap,
    RawReview,
    VrCategory,
)
from ..util import normalize_ws
from .categories import CategoryMapping, assign_category
from .lexicon import KeywordLexicon
from .matching import match_dimensions
from .rules import MIN_WORDS_KEPT, Language, detect_language


@dataclass
class DenyLists:
    """Substring deny patterns, already lowercase, one group per verdict."""

    advertisement: list[str] = field(default_factory=list)
    abusive: list[str] = field(default_factory=list)

    @classmethod
    def from_dir(cls, path: str | Path) -> "DenyLists":
        path = Path(path)
        return cls(
            advertisement=_load_patterns(path / "advertisement.txt"),
            abusive=_load_patterns(path / "abusive.txt"),
        )


def _load_patterns(path: Path) -> list[str]:
    if not path.exists():
        return []
    patterns = []
    for line in path.read_text(encoding="utf-8").splitlines():
        line = line.strip().lower()
        if line and not line.startswith("#"):
            patterns.append(line)
    return patterns


def _first_deny_hit(body_lower: str, patterns: list[str]) -> bool:
    return any(p in body_lower for p in patterns)


def curate_one(
    raw: RawReview,
    lexicon: KeywordLexicon,
    mapping: CategoryMapping,
    deny: DenyLists,
) -> CuratedReview:
    """One verdict per review; rules run in fixed order and stop at the first failure.

    Order: TooShort -> NonEnglish -> Advertisement -> Abusive -> NoDisabilitySignal.
    Dimensions are only computed once every earlier rule has passed.
    """
    body = normalize_ws(raw.body)
    category = assign_category(raw.app, mapping)
    words = len(body.split())

    def verdict(exclusion: Exclusion | None, dims: frozenset[DisabilityDimension]) -> CuratedReview:
        return CuratedReview(
            review_id=raw.review_id,
            app=raw.app,
            body=body,
            word_count=words,
            category=category,
            dimensions=dims,
            exclusion=exclusion,
        )

    if words < MIN_WORDS_KEPT:
        return verdict(Exclusion.TOO_SHORT, frozenset())
    if detect_language(body) is not Language.ENGLISH:
        return verdict(Exclusion.NON_ENGLISH, frozenset())
    body_lower = body.lower()
    if _first_deny_hit(body_lower, deny.advertisement):
        return verdict(Exclusion.ADVERTISEMENT, frozenset())
    if _first_deny_hit(body_lower, deny.abusive):
        return verdict(Exclusion.ABUSIVE, frozenset())
    dims = frozenset(match_dimensions(body, lexicon))
    if not dims:
        return verdict(Exclusion.NO_DISABILITY_SIGNAL, frozenset())
    return verdict(None, dims)


def curate(
    raw_reviews: list[RawReview],
    lexicon: KeywordLexicon,
    mapping: CategoryMapping,
    deny: DenyLists,
) -> list[CuratedReview]:
    """Every input yields exactly one CuratedReview, in input order."""
    return [curate_one(r, lexicon, mapping, deny) for r in raw_reviews]


def prevalence(corpus: list[CuratedReview]) -> PrevalenceMap:
    """Counts per (category, dimension) over kept reviews; multi-label reviews
    contribute one count per carried dimension."""
    counts: PrevalenceMap = {
        (cat, dim): 0 for cat in VrCategory for dim in DisabilityDimension
    }
    for review in corpus:
        if not review.kept:
            continue
        for dim in review.dimensions:
            counts[(review.category, dim)] += 1
    return counts

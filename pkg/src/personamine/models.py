"""Domain types shared across the pipeline, with JSONL-friendly serialization.

All enums serialize as lowercase strings; timestamps as RFC 3339 UTC.
Dimension sets serialize sorted in the fixed enum order so output files are
byte-stable across runs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime
from enum import Enum
from typing import Any, Iterable

from .util import parse_rfc3339, to_rfc3339


class StoreId(str, Enum):
    METAQUEST = "metaquest"
    STEAM = "steam"


class VrCategory(str, Enum):
    ACTION = "action"
    SOCIAL = "social"
    HORROR = "horror"
    PUZZLE = "puzzle"
    SIMULATION = "simulation"
    SPORTS = "sports"


class DisabilityDimension(str, Enum):
    # Declaration order is the fixed tie-break order used everywhere.
    VISION = "vision"
    HEARING = "hearing"
    MOTOR = "motor"
    COGNITIVE = "cognitive"
    VESTIBULAR = "vestibular"
    SPEECH = "speech"


DIMENSION_ORDER: list[DisabilityDimension] = list(DisabilityDimension)
CATEGORY_ORDER: list[VrCategory] = list(VrCategory)


def dimension_rank(dim: DisabilityDimension) -> int:
    return DIMENSION_ORDER.index(dim)


def sorted_dimensions(dims: Iterable[DisabilityDimension]) -> list[DisabilityDimension]:
    return sorted(set(dims), key=dimension_rank)


class Exclusion(str, Enum):
    TOO_SHORT = "too_short"
    NON_ENGLISH = "non_english"
    ADVERTISEMENT = "advertisement"
    ABUSIVE = "abusive"
    NO_DISABILITY_SIGNAL = "no_disability_signal"


@dataclass
class AppDescriptor:
    store: StoreId
    app_id: str
    title: str
    official_description: str = ""
    raw_tags: list[str] = field(default_factory=list)
    popularity_rank: int = 1

    def __post_init__(self):
        if self.popularity_rank < 1:
            raise ValueError(f"popularity_rank must be >= 1, got {self.popularity_rank}")

    @property
    def key(self) -> tuple[str, str]:
        return (self.store.value, self.app_id)

    def to_dict(self) -> dict[str, Any]:
        return {
            "store": self.store.value,
            "app_id": self.app_id,
            "title": self.title,
            "official_description": self.official_description,
            "raw_tags": list(self.raw_tags),
            "popularity_rank": self.popularity_rank,
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "AppDescriptor":
        return cls(
            store=StoreId(d["store"]),
            app_id=d["app_id"],
            title=d.get("title", ""),
            official_description=d.get("official_description", ""),
            raw_tags=list(d.get("raw_tags", [])),
            popularity_rank=int(d.get("popularity_rank", 1)),
        )


@dataclass
class RawReview:
    review_id: str
    app: AppDescriptor
    body: str
    rating: float | None
    posted_at: datetime
    fetched_at: datetime

    def __post_init__(self):
        if not self.body.strip():
            raise ValueError(f"review {self.review_id} has an empty body")
        if self.fetched_at < self.posted_at:
            raise ValueError(f"review {self.review_id} fetched before it was posted")

    def to_dict(self) -> dict[str, Any]:
        return {
            "review_id": self.review_id,
            "app": self.app.to_dict(),
            "body": self.body,
            "rating": self.rating,
            "posted_at": to_rfc3339(self.posted_at),
            "fetched_at": to_rfc3339(self.fetched_at),
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "RawReview":
        return cls(
            review_id=d["review_id"],
            app=AppDescriptor.from_dict(d["app"]),
            body=d["body"],
            rating=d.get("rating"),
            posted_at=parse_rfc3339(d["posted_at"]),
            fetched_at=parse_rfc3339(d["fetched_at"]),
        )


@dataclass
class CuratedReview:
    review_id: str
    app: AppDescriptor
    body: str  # whitespace-normalized
    word_count: int
    category: VrCategory
    # Empty for reviews excluded before the disability-signal rule runs.
    dimensions: frozenset[DisabilityDimension]
    exclusion: Exclusion | None = None

    @property
    def kept(self) -> bool:
        return self.exclusion is None

    def to_dict(self) -> dict[str, Any]:
        return {
            "review_id": self.review_id,
            "app": self.app.to_dict(),
            "body": self.body,
            "word_count": self.word_count,
            "category": self.category.value,
            "dimensions": [d.value for d in sorted_dimensions(self.dimensions)],
            "exclusion": self.exclusion.value if self.exclusion else None,
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "CuratedReview":
        return cls(
            review_id=d["review_id"],
            app=AppDescriptor.from_dict(d["app"]),
            body=d["body"],
            word_count=int(d["word_count"]),
            category=VrCategory(d["category"]),
            dimensions=frozenset(DisabilityDimension(x) for x in d.get("dimensions", [])),
            exclusion=Exclusion(d["exclusion"]) if d.get("exclusion") else None,
        )


@dataclass
class Chunk:
    chunk_id: str  # "{review_id}#{ordinal:02d}"
    review_id: str
    span: tuple[int, int]  # character offsets into the normalized body
    text: str
    category: VrCategory
    dimensions: frozenset[DisabilityDimension]
    app_id: str

    def to_dict(self) -> dict[str, Any]:
        return {
            "chunk_id": self.chunk_id,
            "review_id": self.review_id,
            "span": [self.span[0], self.span[1]],
            "text": self.text,
            "category": self.category.value,
            "dimensions": [d.value for d in sorted_dimensions(self.dimensions)],
            "app_id": self.app_id,
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "Chunk":
        return cls(
            chunk_id=d["chunk_id"],
            review_id=d["review_id"],
            span=(int(d["span"][0]), int(d["span"][1])),
            text=d["text"],
            category=VrCategory(d["category"]),
            dimensions=frozenset(DisabilityDimension(x) for x in d.get("dimensions", [])),
            app_id=d["app_id"],
        )


@dataclass
class Embedding:
    vector: Any  # np.ndarray, (dim,) float64, unit norm
    dim: int
    provider_id: str


@dataclass
class RetrievalHit:
    chunk: Chunk
    score: float  # cosine similarity of query and chunk embeddings


@dataclass
class ProjectContext:
    vr_category: VrCategory
    description: str
    requested_dimension: DisabilityDimension | None = None

    def __post_init__(self):
        if len(self.description) > 2000:
            raise ValueError("project description exceeds 2000 characters")


@dataclass
class EvidenceBundle:
    hits: list[RetrievalHit]
    dimension: DisabilityDimension
    category: VrCategory

    def __post_init__(self):
        if not self.hits:
            raise ValueError("evidence bundle must contain at least one hit")

    @property
    def chunk_ids(self) -> list[str]:
        return [h.chunk.chunk_id for h in self.hits]

    def chunk_by_id(self, chunk_id: str) -> Chunk | None:
        for h in self.hits:
            if h.chunk.chunk_id == chunk_id:
                return h.chunk
        return None


@dataclass
class DimensionValueRecord:
    dimension: DisabilityDimension
    requirements: list[str]
    pain_points: list[str]
    demographics: dict[str, str]  # values are "unspecified" when absent from evidence
    summary: str = ""  # intermediate user summary feeding persona compilation


@dataclass
class Quote:
    text: str
    source_chunk_id: str

    def to_dict(self) -> dict[str, Any]:
        return {"text": self.text, "source_chunk_id": self.source_chunk_id}

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "Quote":
        return cls(text=d["text"], source_chunk_id=d["source_chunk_id"])


@dataclass
class Persona:
    persona_id: str
    display_name: str
    photo: str | None
    biography: str
    pain_points: list[str]
    requirements: list[str]
    quotes: list[Quote]
    dimension: DisabilityDimension
    vr_category: VrCategory
    evidence_chunk_ids: list[str]
    provider_trace: dict[str, str]  # {"provider_id": ..., "prompt_hash": ...}

    def to_dict(self) -> dict[str, Any]:
        return {
            "persona_id": self.persona_id,
            "display_name": self.display_name,
            "photo": self.photo,
            "biography": self.biography,
            "pain_points": list(self.pain_points),
            "requirements": list(self.requirements),
            "quotes": [q.to_dict() for q in self.quotes],
            "dimension": self.dimension.value,
            "vr_category": self.vr_category.value,
            "evidence_chunk_ids": list(self.evidence_chunk_ids),
            "provider_trace": dict(self.provider_trace),
        }

    def to_card_dict(self) -> dict[str, Any]:
        """Thumbnail subset shown in the persona rail."""
        return {
            "persona_id": self.persona_id,
            "display_name": self.display_name,
            "dimension": self.dimension.value,
            "quote": self.quotes[0].text if self.quotes else "",
            "photo": self.photo,
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "Persona":
        return cls(
            persona_id=d["persona_id"],
            display_name=d["display_name"],
            photo=d.get("photo"),
            biography=d["biography"],
            pain_points=list(d.get("pain_points", [])),
            requirements=list(d.get("requirements", [])),
            quotes=[Quote.from_dict(q) for q in d.get("quotes", [])],
            dimension=DisabilityDimension(d["dimension"]),
            vr_category=VrCategory(d["vr_category"]),
            evidence_chunk_ids=list(d.get("evidence_chunk_ids", [])),
            provider_trace=dict(d.get("provider_trace", {})),
        )


PrevalenceMap = dict[tuple[VrCategory, DisabilityDimension], int]


def prevalence_to_json(prevalence: PrevalenceMap) -> dict[str, dict[str, int]]:
    """Full category x dimension grid, zeros included, in enum order."""
    return {
        cat.value: {dim.value: prevalence.get((cat, dim), 0) for dim in DIMENSION_ORDER}
        for cat in CATEGORY_ORDER
    }


def prevalence_from_json(d: dict[str, dict[str, int]]) -> PrevalenceMap:
    out: PrevalenceMap = {}
    for cat_name, row in d.items():
        for dim_name, count in row.items():
            out[(VrCategory(cat_name), DisabilityDimension(dim_name))] = int(count)
    return out

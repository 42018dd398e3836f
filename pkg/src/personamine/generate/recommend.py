"""Cross-app recommendations: same dimension elsewhere, or by requirement text."""

from __future__ import annotations

from enum import Enum

from ..errors import NoEvidence
from ..index.embedding import EmbeddingProvider, embed
from ..index.store import SearchFilter, VectorIndex
from ..models import (
    DisabilityDimension,
    EvidenceBundle,
    Persona,
    RetrievalHit,
    dimension_rank,
)
from .evidence import load_glosses


class RelatedMode(str, Enum):
    SAME_DIMENSION_OTHER_APPS = "same_dimension_other_apps"
    BY_REQUIREMENT = "by_requirement"


def recommend_related(
    persona: Persona,
    index: VectorIndex,
    embedder: EmbeddingProvider,
    mode: RelatedMode = RelatedMode.SAME_DIMENSION_OTHER_APPS,
    requirement: str | None = None,
    k: int = 5,
    glosses: dict[DisabilityDimension, str] | None = None,
) -> list[EvidenceBundle]:
    if mode is RelatedMode.SAME_DIMENSION_OTHER_APPS:
        return _same_dimension_other_apps(persona, index, embedder, k, glosses)
    if mode is RelatedMode.BY_REQUIREMENT:
        if not requirement:
            raise ValueError("by_requirement mode needs a requirement text")
        return _by_requirement(requirement, index, embedder, k)
    raise ValueError(f"unknown mode {mode!r}")


def _same_dimension_other_apps(
    persona: Persona,
    index: VectorIndex,
    embedder: EmbeddingProvider,
    k: int,
    glosses: dict[DisabilityDimension, str] | None,
) -> list[EvidenceBundle]:
    """Chunks carrying the persona's dimension in apps the persona didn't use,
    grouped per app, best-scoring app first."""
    persona_apps = set()
    for chunk_id in persona.evidence_chunk_ids:
        chunk = index.get_chunk(chunk_id)
        if chunk is not None:
            persona_apps.add(chunk.app_id)
    glosses = glosses or load_glosses()
    query = embed([glosses[persona.dimension]], embedder)[0]
    hits = index.search(
        query,
        SearchFilter(dimensions={persona.dimension}, exclude_app=persona_apps),
        k=max(len(index), 1),
    )
    if not hits:
        raise NoEvidence(
            f"no other app has reviews for dimension {persona.dimension.value}"
        )
    grouped: dict[str, list[RetrievalHit]] = {}
    for hit in hits:
        grouped.setdefault(hit.chunk.app_id, []).append(hit)
    bundles = []
    for app_id, app_hits in grouped.items():  # insertion order = best hit first
        bundles.append(
            EvidenceBundle(
                hits=app_hits,
                dimension=persona.dimension,
                category=app_hits[0].chunk.category,
            )
        )
        if len(bundles) >= k:
            break
    return bundles


def _by_requirement(
    requirement: str,
    index: VectorIndex,
    embedder: EmbeddingProvider,
    k: int,
) -> list[EvidenceBundle]:
    """Dimension- and category-free search on the requirement text, grouped
    into bundles by (category, lowest-order dimension of each chunk)."""
    query = embed([requirement], embedder)[0]
    hits = index.search(query, SearchFilter(), k=max(len(index), 1))
    if not hits:
        raise NoEvidence(f"nothing indexed matches requirement {requirement!r}")
    grouped: dict[tuple, list[RetrievalHit]] = {}
    for hit in hits:
        dim = min(hit.chunk.dimensions, key=dimension_rank)
        grouped.setdefault((hit.chunk.category, dim), []).append(hit)
    bundles = []
    for (category, dim), group_hits in grouped.items():
        bundles.append(EvidenceBundle(hits=group_hits, dimension=dim, category=category))
        if len(bundles) >= k:
            break
    return bundles

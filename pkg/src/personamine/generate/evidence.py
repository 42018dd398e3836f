"""Dimension selection and evidence retrieval for a project context."""

from __future__ import annotations

import sys
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from ..errors import NoEvidence
from ..index.embedding import EmbeddingProvider, embed
from ..index.store import SearchFilter, VectorIndex
from ..models import (
    DIMENSION_ORDER,
    DisabilityDimension,
    EvidenceBundle,
    PrevalenceMap,
    ProjectContext,
)

DEFAULT_K = 8


def default_glosses_path() -> Path:
    return Path(__file__).resolve().parent.parent / "conf" / "glosses.toml"


def load_glosses(path: str | Path | None = None) -> dict[DisabilityDimension, str]:
    with open(path or default_glosses_path(), "rb") as fh:
        data = tomllib.load(fh)
    return {DisabilityDimension(k): v for k, v in data["glosses"].items()}


def select_dimension(ctx: ProjectContext, prevalence: PrevalenceMap) -> DisabilityDimension:
    """Explicit request wins; otherwise the dimension with the highest count
    for the project category, ties broken by the fixed enum order."""
    if ctx.requested_dimension is not None:
        return ctx.requested_dimension
    best: DisabilityDimension | None = None
    best_count = 0
    for dim in DIMENSION_ORDER:
        count = prevalence.get((ctx.vr_category, dim), 0)
        if count > best_count:
            best, best_count = dim, count
    if best is None:
        raise NoEvidence(
            f"no curated reviews carry any disability signal for category "
            f"{ctx.vr_category.value}"
        )
    return best


def build_evidence(
    ctx: ProjectContext,
    dimension: DisabilityDimension,
    index: VectorIndex,
    embedder: EmbeddingProvider,
    k: int = DEFAULT_K,
    glosses: dict[DisabilityDimension, str] | None = None,
) -> EvidenceBundle:
    """Top-k chunks for (project category, dimension), query steered by the
    dimension gloss phrase appended to the project description."""
    glosses = glosses or load_glosses()
    query_text = f"{ctx.description} {glosses[dimension]}".strip()
    query = embed([query_text], embedder)[0]
    hits = index.search(
        query,
        SearchFilter(category=ctx.vr_category, dimensions={dimension}),
        k=k,
    )
    if not hits:
        raise NoEvidence(
            f"no indexed chunks for category {ctx.vr_category.value} and "
            f"dimension {dimension.value}"
        )
    return EvidenceBundle(hits=hits, dimension=dimension, category=ctx.vr_category)

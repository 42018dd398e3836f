"""Facade wiring index, prevalence, and providers into one generation service."""

from __future__ import annotations

import json
from pathlib import Path

from .generate.evidence import DEFAULT_K, build_evidence, load_glosses, select_dimension
from .generate.extraction import extract_dimension_values
from .generate.persona import RETRY_BUDGET, compile_persona
from .generate.providers import LlmProvider, PhotoProvider
from .generate.recommend import RelatedMode, recommend_related
from .index.embedding import EmbeddingProvider
from .index.store import VectorIndex
from .models import (
    DisabilityDimension,
    EvidenceBundle,
    Persona,
    PrevalenceMap,
    ProjectContext,
    prevalence_to_json,
)


def dump_json(data: dict) -> str:
    return json.dumps(data, ensure_ascii=False, indent=2) + "\n"


class Engine:
    def __init__(
        self,
        index: VectorIndex,
        prevalence: PrevalenceMap,
        embedder: EmbeddingProvider,
        llm: LlmProvider,
        photo_provider: PhotoProvider | None = None,
        glosses: dict[DisabilityDimension, str] | None = None,
        k: int = DEFAULT_K,
        retry_budget: int = RETRY_BUDGET,
        personas_dir: str | Path | None = None,
    ):
        self.index = index
        self.prevalence = prevalence
        self.embedder = embedder
        self.llm = llm
        self.photo_provider = photo_provider
        self.glosses = glosses or load_glosses()
        self.k = k
        self.retry_budget = retry_budget
        self.personas_dir = Path(personas_dir) if personas_dir else None
        self._personas: dict[str, Persona] = {}

    # --- generation -----------------------------------------------------------

    def generate_persona(self, ctx: ProjectContext) -> Persona:
        dimension = select_dimension(ctx, self.prevalence)
        bundle = build_evidence(
            ctx, dimension, self.index, self.embedder, k=self.k, glosses=self.glosses
        )
        record = extract_dimension_values(bundle, self.llm)
        persona = compile_persona(
            record, bundle, self.llm,
            photo_provider=self.photo_provider,
            retry_budget=self.retry_budget,
        )
        self._personas[persona.persona_id] = persona
        if self.personas_dir is not None:
            self._persist(persona)
        return persona

    def _persist(self, persona: Persona) -> None:
        self.personas_dir.mkdir(parents=True, exist_ok=True)
        (self.personas_dir / f"{persona.persona_id}.json").write_text(
            dump_json(persona.to_dict()), encoding="utf-8"
        )
        (self.personas_dir / f"{persona.persona_id}.card.json").write_text(
            dump_json(persona.to_card_dict()), encoding="utf-8"
        )

    # --- lookup ------------------------------------------------------------------

    def load_persona(self, persona_id: str) -> Persona | None:
        if persona_id in self._personas:
            return self._personas[persona_id]
        if self.personas_dir is not None:
            path = self.personas_dir / f"{persona_id}.json"
            if path.exists():
                persona = Persona.from_dict(json.loads(path.read_text(encoding="utf-8")))
                self._personas[persona_id] = persona
                return persona
        return None

    def persona_bytes(self, persona_id: str) -> bytes | None:
        """Raw on-disk persona.json bytes, so API responses match the file."""
        if self.personas_dir is not None:
            path = self.personas_dir / f"{persona_id}.json"
            if path.exists():
                return path.read_bytes()
        persona = self._personas.get(persona_id)
        if persona is not None:
            return dump_json(persona.to_dict()).encode("utf-8")
        return None

    def card_bytes(self, persona_id: str) -> bytes | None:
        if self.personas_dir is not None:
            path = self.personas_dir / f"{persona_id}.card.json"
            if path.exists():
                return path.read_bytes()
        persona = self._personas.get(persona_id)
        if persona is not None:
            return dump_json(persona.to_card_dict()).encode("utf-8")
        return None

    # --- recommendations -----------------------------------------------------------

    def recommend(
        self,
        persona: Persona,
        mode: RelatedMode = RelatedMode.SAME_DIMENSION_OTHER_APPS,
        requirement: str | None = None,
        k: int = 5,
    ) -> list[EvidenceBundle]:
        return recommend_related(
            persona, self.index, self.embedder, mode=mode, requirement=requirement,
            k=k, glosses=self.glosses,
        )

    # --- stats ------------------------------------------------------------------

    def prevalence_json(self) -> dict:
        return prevalence_to_json(self.prevalence)

    @property
    def index_count(self) -> int:
        return len(self.index)

    @property
    def provider_ids(self) -> list[str]:
        ids = [self.llm.provider_id, self.embedder.provider_id]
        if self.photo_provider is not None:
            ids.append(self.photo_provider.provider_id)
        return ids

"""Versioned prompt templates and deterministic evidence formatting."""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

from ..models import DimensionValueRecord, EvidenceBundle

TEMPLATE_DIR = Path(__file__).resolve().parent / "templates"
EXTRACTION_TEMPLATE = "extraction_v1"
PERSONA_TEMPLATE = "persona_v1"


def load_template(name: str) -> str:
    return (TEMPLATE_DIR / f"{name}.txt").read_text(encoding="utf-8")


def format_evidence(bundle: EvidenceBundle) -> str:
    """One line per chunk: [chunk_id] text. Chunk texts carry no newlines."""
    return "\n".join(f"[{h.chunk.chunk_id}] {h.chunk.text}" for h in bundle.hits)


def render_extraction_prompt(bundle: EvidenceBundle) -> str:
    return load_template(EXTRACTION_TEMPLATE).format(
        dimension=bundle.dimension.value,
        category=bundle.category.value,
        evidence=format_evidence(bundle),
    )


def render_persona_prompt(record: DimensionValueRecord, bundle: EvidenceBundle,
                          attempt: int) -> str:
    return load_template(PERSONA_TEMPLATE).format(
        summary=record.summary,
        requirements=json.dumps(record.requirements, ensure_ascii=False),
        pain_points=json.dumps(record.pain_points, ensure_ascii=False),
        demographics=json.dumps(record.demographics, ensure_ascii=False, sort_keys=True),
        dimension=record.dimension.value,
        category=bundle.category.value,
        attempt=attempt,
        evidence=format_evidence(bundle),
    )


def prompt_hash(*prompts: str) -> str:
    h = hashlib.sha256()
    for p in prompts:
        h.update(p.encode("utf-8"))
        h.update(b"\x00")
    return h.hexdigest()

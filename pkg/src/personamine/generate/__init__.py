"""Retrieval-grounded persona generation."""

from .evidence import build_evidence, load_glosses, select_dimension
from .extraction import extract_dimension_values
from .persona import GroundingVerdict, compile_persona, validate_grounding
from .providers import (
    LlmProvider,
    MockLlmProvider,
    RecordingLlmProvider,
    RemoteLlmProvider,
    ReplayLlmProvider,
    StubPhotoProvider,
    get_llm_provider,
)
from .recommend import RelatedMode, recommend_related

__all__ = [
    "build_evidence",
    "load_glosses",
    "select_dimension",
    "extract_dimension_values",
    "GroundingVerdict",
    "compile_persona",
    "validate_grounding",
    "LlmProvider",
    "MockLlmProvider",
    "RecordingLlmProvider",
    "RemoteLlmProvider",
    "ReplayLlmProvider",
    "StubPhotoProvider",
    "get_llm_provider",
    "RelatedMode",
    "recommend_related",
]

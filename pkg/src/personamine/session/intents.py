"""Deterministic rule-based intent router for chat turns.

Rules fire in a fixed order, so classification is a pure function of the
turn text. An LLM router could be slotted in behind the same Turn shape.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum

from ..curation.lexicon import KeywordLexicon, load_default_lexicon
from ..curation.matching import match_dimensions
from ..models import DisabilityDimension, VrCategory, dimension_rank
from ..util import match_tokens


class Intent(str, Enum):
    DESCRIBE_PROJECT = "describe_project"
    REQUEST_PERSONA = "request_persona"
    ASK_REQUIREMENTS = "ask_requirements"
    REQUEST_RELATED = "request_related"
    UNKNOWN = "unknown"


@dataclass
class Turn:
    intent: Intent
    text: str
    payload: dict = field(default_factory=dict)


_CATEGORY_KEYWORDS: dict[VrCategory, set[str]] = {
    VrCategory.ACTION: {"action", "shooter", "combat", "climbing"},
    VrCategory.SOCIAL: {"social", "chat", "party", "hangout"},
    VrCategory.HORROR: {"horror", "scary", "spooky"},
    VrCategory.PUZZLE: {"puzzle", "puzzles", "escape"},
    VrCategory.SIMULATION: {"simulation", "simulator", "sim"},
    VrCategory.SPORTS: {"sports", "sport", "fitness", "racing"},
}

_DIMENSION_NAMES: dict[str, DisabilityDimension] = {
    "vision": DisabilityDimension.VISION,
    "visual": DisabilityDimension.VISION,
    "sight": DisabilityDimension.VISION,
    "hearing": DisabilityDimension.HEARING,
    "audio": DisabilityDimension.HEARING,
    "motor": DisabilityDimension.MOTOR,
    "mobility": DisabilityDimension.MOTOR,
    "cognitive": DisabilityDimension.COGNITIVE,
    "vestibular": DisabilityDimension.VESTIBULAR,
    "speech": DisabilityDimension.SPEECH,
    "voice": DisabilityDimension.SPEECH,
}

_PROJECT_CUES = ("project", "building", "developing", "working on", "we are making",
                 "i am making", "i'm making")
_PERSONA_VERBS = ("generate", "create", "make", "build", "show", "give", "another",
                  "new", "request")
_RELATED_CUES = ("other apps", "other applications", "similar", "same disability",
                 "related personas", "other games")

_lexicon_cache: KeywordLexicon | None = None


def _lexicon() -> KeywordLexicon:
    global _lexicon_cache
    if _lexicon_cache is None:
        _lexicon_cache = load_default_lexicon()
    return _lexicon_cache


def _find_category(tokens: list[str]) -> VrCategory | None:
    token_set = set(tokens)
    for category in VrCategory:  # enum order keeps this deterministic
        if _CATEGORY_KEYWORDS[category] & token_set:
            return category
    return None


def _find_dimension(text: str, tokens: list[str]) -> DisabilityDimension | None:
    token_set = set(tokens)
    named = [dim for name, dim in _DIMENSION_NAMES.items() if name in token_set]
    if named:
        return min(named, key=dimension_rank)
    matched = match_dimensions(text, _lexicon())
    if matched:
        return min(matched, key=dimension_rank)
    return None


_ORDINAL_RE = re.compile(r"\bpersona\s+(\d+)\b")


def classify_turn(text: str) -> Turn:
    if not text.strip():
        raise ValueError("turn text is empty")
    lowered = text.lower()
    tokens = match_tokens(text)
    category = _find_category(tokens)

    def describe_turn() -> Turn:
        payload: dict = {"description": text.strip()}
        if category is not None:
            payload["vr_category"] = category
        dim = _find_dimension(text, tokens)
        if dim is not None:
            payload["requested_dimension"] = dim
        return Turn(intent=Intent.DESCRIBE_PROJECT, text=text, payload=payload)

    if any(cue in lowered for cue in _PROJECT_CUES):
        return describe_turn()

    if "persona" in lowered and any(v in tokens for v in _PERSONA_VERBS):
        payload = {}
        dim = _find_dimension(text, tokens)
        if dim is not None:
            payload["requested_dimension"] = dim
        return Turn(intent=Intent.REQUEST_PERSONA, text=text, payload=payload)

    # Implicit description: a category plus a thing being made.
    if category is not None and {"game", "app", "experience", "title"} & set(tokens):
        return describe_turn()

    if "requirement" in lowered or "needs" in tokens or "need" in tokens:
        payload = {}
        m = _ORDINAL_RE.search(lowered)
        if m:
            payload["persona_ordinal"] = int(m.group(1))
        return Turn(intent=Intent.ASK_REQUIREMENTS, text=text, payload=payload)

    if any(cue in lowered for cue in _RELATED_CUES):
        return Turn(intent=Intent.REQUEST_RELATED, text=text, payload={})

    return Turn(intent=Intent.UNKNOWN, text=text, payload={})

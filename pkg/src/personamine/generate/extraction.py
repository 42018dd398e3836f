"""Stage one of generation: evidence -> intermediate summary + dimension values."""

from __future__ import annotations

import json
import re

from ..errors import ExtractionParseError
from ..models import DimensionValueRecord, EvidenceBundle
from .prompts import render_extraction_prompt
from .providers import LlmProvider

REPROMPT_SUFFIX = "\n\nREMINDER: respond with only the JSON object, no prose, no fences."

DEMOGRAPHIC_KEYS = ("age", "occupation", "vr_experience")

_FENCE_RE = re.compile(r"^```[a-z]*\n(.*)\n```$", re.DOTALL)


def strip_fences(text: str) -> str:
    text = text.strip()
    m = _FENCE_RE.match(text)
    return m.group(1).strip() if m else text


def _parse_structured(raw: str) -> dict:
    data = json.loads(strip_fences(raw))
    if not isinstance(data, dict):
        raise ValueError("output is not a JSON object")
    return data


def _clean_str_list(value) -> list[str]:
    if not isinstance(value, list):
        raise ValueError("expected a list")
    out = [str(v).strip() for v in value if str(v).strip()]
    if not out:
        raise ValueError("list is empty")
    return out


def extract_dimension_values(bundle: EvidenceBundle, provider: LlmProvider
                             ) -> DimensionValueRecord:
    """Run the extraction prompt; one reprompt on malformed output, then fail.

    The record's dimension is always the bundle's, regardless of what the
    provider emitted; demographics absent from evidence stay "unspecified".
    """
    prompt = render_extraction_prompt(bundle)
    last_error: Exception | None = None
    for attempt_prompt in (prompt, prompt + REPROMPT_SUFFIX):
        raw = provider.generate(attempt_prompt, schema_hint="extraction")
        try:
            data = _parse_structured(raw)
            requirements = _clean_str_list(data["requirements"])
            pain_points = _clean_str_list(data["pain_points"])
            demographics_in = data.get("demographics", {})
            if not isinstance(demographics_in, dict):
                raise ValueError("demographics is not an object")
            demographics = {}
            for key in DEMOGRAPHIC_KEYS:
                value = str(demographics_in.get(key, "") or "").strip()
                demographics[key] = value if value else "unspecified"
            summary = str(data.get("summary", "")).strip()
        except (KeyError, ValueError, json.JSONDecodeError) as exc:
            last_error = exc
            continue
        return DimensionValueRecord(
            dimension=bundle.dimension,  # forced: provider text cannot change it
            requirements=requirements,
            pain_points=pain_points,
            demographics=demographics,
            summary=summary,
        )
    raise ExtractionParseError(
        f"provider output violated the extraction schema twice: {last_error}"
    )

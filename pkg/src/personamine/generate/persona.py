"""Stage two of generation: compile a persona and enforce quote grounding."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from ..errors import ExtractionParseError, GroundingError, InvariantViolation
from ..models import DimensionValueRecord, EvidenceBundle, Persona, Quote
from ..util import normalize_ws
from .extraction import strip_fences
from .prompts import prompt_hash, render_extraction_prompt, render_persona_prompt
from .providers import LlmProvider, PhotoProvider, placeholder_photo

RETRY_BUDGET = 2  # regenerations allowed after a grounding failure


@dataclass
class GroundingVerdict:
    passed: bool
    violations: list[str] = field(default_factory=list)


def validate_grounding(persona: Persona, bundle: EvidenceBundle) -> GroundingVerdict:
    """Pass iff every quote is a whitespace-normalized substring of the chunk
    it cites and that chunk belongs to the bundle. Total: never raises."""
    violations = []
    if not persona.quotes:
        violations.append("persona has no quotes")
    for quote in persona.quotes:
        chunk = bundle.chunk_by_id(quote.source_chunk_id)
        if chunk is None:
            violations.append(
                f"quote cites chunk {quote.source_chunk_id!r} outside the evidence bundle"
            )
            continue
        if normalize_ws(quote.text) not in normalize_ws(chunk.text):
            violations.append(
                f"quote {quote.text[:60]!r} is not a substring of chunk {quote.source_chunk_id}"
            )
    return GroundingVerdict(passed=not violations, violations=violations)


def _parse_persona_output(raw: str) -> tuple[str, str, list[Quote]]:
    data = json.loads(strip_fences(raw))
    if not isinstance(data, dict):
        raise ValueError("output is not a JSON object")
    name = str(data["display_name"]).strip()
    biography = str(data["biography"]).strip()
    if not name or not biography:
        raise ValueError("display_name and biography must be non-empty")
    quotes = []
    for q in data.get("quotes", []):
        quotes.append(Quote(text=str(q["text"]), source_chunk_id=str(q["source_chunk_id"])))
    return name, biography, quotes


def _persona_id(record: DimensionValueRecord, bundle: EvidenceBundle, trace_hash: str) -> str:
    basis = "|".join(
        [record.dimension.value, bundle.category.value, *bundle.chunk_ids, trace_hash]
    )
    return "p-" + hashlib.sha256(basis.encode("utf-8")).hexdigest()[:12]


def compile_persona(
    record: DimensionValueRecord,
    bundle: EvidenceBundle,
    provider: LlmProvider,
    photo_provider: PhotoProvider | None = None,
    retry_budget: int = RETRY_BUDGET,
) -> Persona:
    """Generate, validate grounding, retry up to the budget, then hard-fail.

    A persona is never returned unless validate_grounding passes.
    """
    if record.dimension != bundle.dimension:
        raise InvariantViolation(
            f"record dimension {record.dimension.value} != bundle dimension "
            f"{bundle.dimension.value}"
        )
    all_violations: list[str] = []
    for attempt in range(retry_budget + 1):
        persona_prompt = render_persona_prompt(record, bundle, attempt)
        raw = provider.generate(persona_prompt, schema_hint="persona")
        try:
            name, biography, quotes = _parse_persona_output(raw)
        except (KeyError, ValueError, json.JSONDecodeError):
            raw = provider.generate(
                persona_prompt + "\n\nREMINDER: respond with only the JSON object.",
                schema_hint="persona",
            )
            try:
                name, biography, quotes = _parse_persona_output(raw)
            except (KeyError, ValueError, json.JSONDecodeError) as exc:
                raise ExtractionParseError(
                    f"persona output violated the schema twice: {exc}"
                ) from exc

        trace_hash = prompt_hash(render_extraction_prompt(bundle), persona_prompt)
        if photo_provider is not None:
            photo = photo_provider.render(trace_hash, biography)
        else:
            photo = placeholder_photo(record.dimension.value)
        persona = Persona(
            persona_id=_persona_id(record, bundle, trace_hash),
            display_name=name,
            photo=photo,
            biography=biography,
            pain_points=list(record.pain_points),
            requirements=list(record.requirements),
            quotes=quotes,
            dimension=record.dimension,
            vr_category=bundle.category,
            evidence_chunk_ids=list(bundle.chunk_ids),
            provider_trace={"provider_id": provider.provider_id, "prompt_hash": trace_hash},
        )
        verdict = validate_grounding(persona, bundle)
        if verdict.passed:
            return persona
        all_violations.extend(f"attempt {attempt}: {v}" for v in verdict.violations)
    raise GroundingError(
        f"quotes failed grounding after {retry_budget + 1} attempts",
        violations=all_violations,
    )

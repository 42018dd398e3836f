"""Dimension selection, evidence building, extraction, grounding, recommendations."""

import json

import pytest

from personamine.errors import (
    ExtractionParseError,
    GroundingError,
    InvariantViolation,
    NoEvidence,
)
from personamine.generate import (
    MockLlmProvider,
    RelatedMode,
    StubPhotoProvider,
    build_evidence,
    compile_persona,
    extract_dimension_values,
    recommend_related,
    select_dimension,
    validate_grounding,
)
from personamine.index import HashedBowProvider, VectorIndex, embed
from personamine.models import (
    Chunk,
    DisabilityDimension,
    EvidenceBundle,
    Persona,
    ProjectContext,
    Quote,
    RetrievalHit,
    VrCategory,
)

D = DisabilityDimension
C = VrCategory

EMBEDDER = HashedBowProvider()

VESTIBULAR_TEXTS = [
    "the smooth turning gave me motion sickness within about five minutes of play",
    "artificial locomotion makes me so dizzy that i can only play in short bursts",
    "got extremely nauseous during the vehicle sections even with comfort settings on",
    "sim sickness hits me hard here and the vertigo on the tower was brutal",
]


def build_index(specs):
    index = VectorIndex(dim=EMBEDDER.dim, provider_id=EMBEDDER.provider_id)
    chunks = []
    for chunk_id, text, category, dims, app_id in specs:
        chunks.append(
            Chunk(
                chunk_id=chunk_id,
                review_id=chunk_id.split("#")[0],
                span=(0, len(text)),
                text=text,
                category=category,
                dimensions=frozenset(dims),
                app_id=app_id,
            )
        )
    embeddings = embed([c.text for c in chunks], EMBEDDER)
    index.upsert(list(zip(chunks, embeddings)))
    return index


def vestibular_index(app_id="app-a", n=4):
    return build_index(
        [
            (f"r{i}#00", VESTIBULAR_TEXTS[i % len(VESTIBULAR_TEXTS)], C.ACTION, {D.VESTIBULAR}, app_id)
            for i in range(n)
        ]
    )


def make_bundle(index, dimension=D.VESTIBULAR, category=C.ACTION, k=8):
    ctx = ProjectContext(vr_category=category, description="a climbing action game")
    return build_evidence(ctx, dimension, index, EMBEDDER, k=k)


class TestSelectDimension:
    def test_argmax(self):
        prevalence = {(C.ACTION, D.VESTIBULAR): 12, (C.ACTION, D.HEARING): 3}
        ctx = ProjectContext(vr_category=C.ACTION, description="x")
        assert select_dimension(ctx, prevalence) is D.VESTIBULAR

    def test_requested_wins(self):
        prevalence = {(C.ACTION, D.VESTIBULAR): 12, (C.ACTION, D.HEARING): 3}
        ctx = ProjectContext(
            vr_category=C.ACTION, description="x", requested_dimension=D.HEARING
        )
        assert select_dimension(ctx, prevalence) is D.HEARING

    def test_all_zero_raises(self):
        ctx = ProjectContext(vr_category=C.PUZZLE, description="x")
        with pytest.raises(NoEvidence):
            select_dimension(ctx, {})

    def test_tie_break_enum_order(self):
        prevalence = {(C.ACTION, D.MOTOR): 5, (C.ACTION, D.HEARING): 5}
        ctx = ProjectContext(vr_category=C.ACTION, description="x")
        assert select_dimension(ctx, prevalence) is D.HEARING

    def test_scale_invariance(self):
        prevalence = {(C.ACTION, D.VESTIBULAR): 4, (C.ACTION, D.VISION): 3}
        scaled = {key: 7 * v for key, v in prevalence.items()}
        ctx = ProjectContext(vr_category=C.ACTION, description="x")
        assert select_dimension(ctx, prevalence) is select_dimension(ctx, scaled)


class TestBuildEvidence:
    def test_k_of_many(self):
        index = vestibular_index(n=12)
        bundle = make_bundle(index, k=8)
        assert len(bundle.hits) == 8
        scores = [h.score for h in bundle.hits]
        assert scores == sorted(scores, reverse=True)

    def test_truncated_to_available(self):
        index = vestibular_index(n=2)
        bundle = make_bundle(index, k=8)
        assert len(bundle.hits) == 2

    def test_no_matching_chunks(self):
        index = vestibular_index(n=3)
        ctx = ProjectContext(vr_category=C.ACTION, description="x")
        with pytest.raises(NoEvidence):
            build_evidence(ctx, D.SPEECH, index, EMBEDDER)

    def test_filter_respected(self):
        index = build_index(
            [
                ("a#00", VESTIBULAR_TEXTS[0], C.ACTION, {D.VESTIBULAR}, "app-a"),
                ("b#00", VESTIBULAR_TEXTS[1], C.SOCIAL, {D.VESTIBULAR}, "app-b"),
            ]
        )
        bundle = make_bundle(index)
        assert [h.chunk.chunk_id for h in bundle.hits] == ["a#00"]


class TestExtraction:
    def test_mock_round_trip(self):
        index = vestibular_index(n=3)
        bundle = make_bundle(index)
        record = extract_dimension_values(bundle, MockLlmProvider())
        assert record.dimension is D.VESTIBULAR
        assert len(record.requirements) >= 1
        assert any("comfort" in r.lower() or "teleport" in r.lower() for r in record.requirements)
        assert len(record.pain_points) >= 1
        assert set(record.demographics) == {"age", "occupation", "vr_experience"}

    def test_dimension_forced_over_provider_text(self):
        class WrongDimProvider:
            provider_id = "fake"

            def generate(self, prompt, schema_hint=""):
                return json.dumps(
                    {
                        "dimension": "hearing",
                        "summary": "s",
                        "requirements": ["comfort/teleport option"],
                        "pain_points": ["nausea"],
                        "demographics": {},
                    }
                )

        index = vestibular_index(n=2)
        bundle = make_bundle(index)
        record = extract_dimension_values(bundle, WrongDimProvider())
        assert record.dimension is D.VESTIBULAR
        assert record.demographics["age"] == "unspecified"

    def test_malformed_twice_raises(self):
        class BrokenProvider:
            provider_id = "broken"

            def generate(self, prompt, schema_hint=""):
                return "not json at all"

        index = vestibular_index(n=2)
        bundle = make_bundle(index)
        with pytest.raises(ExtractionParseError):
            extract_dimension_values(bundle, BrokenProvider())

    def test_reprompt_recovers(self):
        class FlakyProvider:
            provider_id = "flaky"

            def __init__(self):
                self.calls = 0

            def generate(self, prompt, schema_hint=""):
                self.calls += 1
                if self.calls == 1:
                    return "hmm {"
                return json.dumps(
                    {
                        "summary": "s",
                        "requirements": ["r"],
                        "pain_points": ["p"],
                        "demographics": {"age": "34"},
                    }
                )

        index = vestibular_index(n=2)
        bundle = make_bundle(index)
        record = extract_dimension_values(bundle, FlakyProvider())
        assert record.demographics["age"] == "34"


class CorruptingProvider:
    """Wraps the mock and injects one altered word into every quote."""

    provider_id = "corrupting-mock"

    def __init__(self):
        self.inner = MockLlmProvider()

    def generate(self, prompt, schema_hint=""):
        raw = self.inner.generate(prompt, schema_hint)
        data = json.loads(raw)
        if "quotes" in data:
            for q in data["quotes"]:
                words = q["text"].split()
                if words:
                    words[0] = "FABRICATED"
                q["text"] = " ".join(words)
        return json.dumps(data, ensure_ascii=False)


class TestCompilePersona:
    def _record_and_bundle(self, n=3):
        index = vestibular_index(n=n)
        bundle = make_bundle(index)
        record = extract_dimension_values(bundle, MockLlmProvider())
        return record, bundle

    def test_grounded_persona(self):
        record, bundle = self._record_and_bundle()
        persona = compile_persona(record, bundle, MockLlmProvider())
        assert validate_grounding(persona, bundle).passed
        assert persona.dimension is D.VESTIBULAR
        assert persona.quotes
        assert set(q.source_chunk_id for q in persona.quotes) <= set(persona.evidence_chunk_ids)
        assert persona.provider_trace["provider_id"] == "mock"
        assert len(persona.provider_trace["prompt_hash"]) == 64

    def test_placeholder_photo_by_default(self):
        record, bundle = self._record_and_bundle()
        persona = compile_persona(record, bundle, MockLlmProvider())
        assert persona.photo == "placeholder://persona/vestibular.svg"

    def test_stub_photo_provider(self):
        record, bundle = self._record_and_bundle()
        persona = compile_persona(record, bundle, MockLlmProvider(),
                                  photo_provider=StubPhotoProvider())
        assert persona.photo.startswith("stub://photo/")

    def test_dimension_mismatch_is_invariant_error(self):
        record, bundle = self._record_and_bundle()
        record.dimension = D.HEARING
        with pytest.raises(InvariantViolation):
            compile_persona(record, bundle, MockLlmProvider())

    def test_corrupted_output_rejected_within_budget(self):
        record, bundle = self._record_and_bundle()
        provider = CorruptingProvider()
        with pytest.raises(GroundingError) as err:
            compile_persona(record, bundle, provider, retry_budget=2)
        assert err.value.violations

    def test_mock_determinism(self):
        record, bundle = self._record_and_bundle()
        a = compile_persona(record, bundle, MockLlmProvider()).to_dict()
        b = compile_persona(record, bundle, MockLlmProvider()).to_dict()
        assert a == b


class TestValidateGrounding:
    def _persona_with_quotes(self, bundle, quotes):
        return Persona(
            persona_id="p-x",
            display_name="X",
            photo=None,
            biography="b",
            pain_points=["p"],
            requirements=["r"],
            quotes=quotes,
            dimension=bundle.dimension,
            vr_category=bundle.category,
            evidence_chunk_ids=bundle.chunk_ids,
            provider_trace={"provider_id": "t", "prompt_hash": "h"},
        )

    def test_verbatim_quote_passes(self):
        index = vestibular_index(n=2)
        bundle = make_bundle(index)
        chunk = bundle.hits[0].chunk
        persona = self._persona_with_quotes(
            bundle, [Quote(text=chunk.text, source_chunk_id=chunk.chunk_id)]
        )
        assert validate_grounding(persona, bundle).passed

    def test_altered_word_fails_naming_quote(self):
        index = vestibular_index(n=2)
        bundle = make_bundle(index)
        chunk = bundle.hits[0].chunk
        altered = chunk.text.replace("motion", "motionx", 1)
        persona = self._persona_with_quotes(
            bundle, [Quote(text=altered, source_chunk_id=chunk.chunk_id)]
        )
        verdict = validate_grounding(persona, bundle)
        assert not verdict.passed
        assert len(verdict.violations) == 1

    def test_outside_chunk_id_fails(self):
        index = vestibular_index(n=2)
        bundle = make_bundle(index)
        persona = self._persona_with_quotes(
            bundle, [Quote(text="anything", source_chunk_id="ghost#00")]
        )
        verdict = validate_grounding(persona, bundle)
        assert not verdict.passed
        assert "outside" in verdict.violations[0]

    def test_whitespace_normalization_tolerated(self):
        index = vestibular_index(n=2)
        bundle = make_bundle(index)
        chunk = bundle.hits[0].chunk
        spaced = "  " + chunk.text.replace(" ", "  ") + " "
        persona = self._persona_with_quotes(
            bundle, [Quote(text=spaced, source_chunk_id=chunk.chunk_id)]
        )
        assert validate_grounding(persona, bundle).passed


class TestRecommendRelated:
    def _persona_from(self, index):
        bundle = make_bundle(index)
        record = extract_dimension_values(bundle, MockLlmProvider())
        return compile_persona(record, bundle, MockLlmProvider())

    def test_other_apps_only(self):
        specs = [
            ("a1#00", VESTIBULAR_TEXTS[0], C.ACTION, {D.VESTIBULAR}, "app-a"),
            ("a2#00", VESTIBULAR_TEXTS[1], C.ACTION, {D.VESTIBULAR}, "app-a"),
            ("b1#00", VESTIBULAR_TEXTS[2], C.SOCIAL, {D.VESTIBULAR}, "app-b"),
            ("c1#00", VESTIBULAR_TEXTS[3], C.HORROR, {D.VESTIBULAR}, "app-c"),
        ]
        index = build_index(specs)
        persona = self._persona_from(index)
        bundles = recommend_related(persona, index, EMBEDDER)
        apps = {b.hits[0].chunk.app_id for b in bundles}
        assert apps == {"app-b", "app-c"}
        for b in bundles:
            assert b.dimension is D.VESTIBULAR

    def test_no_other_app_raises(self):
        index = vestibular_index(app_id="app-a", n=3)
        persona = self._persona_from(index)
        with pytest.raises(NoEvidence):
            recommend_related(persona, index, EMBEDDER)

    def test_by_requirement_over_hearing_corpus(self):
        specs = [
            ("h1#00", "no subtitles at all and i am deaf", C.ACTION, {D.HEARING}, "app-a"),
            ("h2#00", "please add subtitles for the story", C.SOCIAL, {D.HEARING}, "app-b"),
            ("v1#00", VESTIBULAR_TEXTS[0], C.ACTION, {D.VESTIBULAR}, "app-a"),
        ]
        index = build_index(specs)
        persona = self._persona_from(build_index(
            [("x#00", VESTIBULAR_TEXTS[0], C.ACTION, {D.VESTIBULAR}, "app-z")]
        ))
        bundles = recommend_related(
            persona, index, EMBEDDER, mode=RelatedMode.BY_REQUIREMENT,
            requirement="subtitles",
        )
        top = bundles[0]
        assert top.dimension is D.HEARING
        assert all(D.HEARING in h.chunk.dimensions for h in top.hits)

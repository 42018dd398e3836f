"""Intent routing, state machine transitions, event-log persistence, isolation."""

import itertools
import threading

import pytest

from personamine.errors import NoEvidence, ProviderUnavailable
from personamine.generate import MockLlmProvider, extract_dimension_values, compile_persona
from personamine.index import HashedBowProvider
from personamine.models import DisabilityDimension, VrCategory
from personamine.session import (
    Intent,
    Session,
    SessionManager,
    SessionState,
    SessionStore,
    Turn,
    advance,
    classify_turn,
)

from test_generate import EMBEDDER, build_index, make_bundle, VESTIBULAR_TEXTS

D = DisabilityDimension
C = VrCategory


class StubEngine:
    """In-memory engine standing in for the full pipeline."""

    def __init__(self, fail_with=None):
        self.fail_with = fail_with
        self.generated = 0
        index = build_index(
            [
                (f"r{i}#00", VESTIBULAR_TEXTS[i], C.ACTION, {D.VESTIBULAR}, "app-a")
                for i in range(3)
            ]
        )
        bundle = make_bundle(index)
        record = extract_dimension_values(bundle, MockLlmProvider())
        self._persona = compile_persona(record, bundle, MockLlmProvider())
        self._store = {self._persona.persona_id: self._persona}

    def generate_persona(self, ctx):
        if self.fail_with is not None:
            raise self.fail_with
        self.generated += 1
        return self._persona

    def load_persona(self, persona_id):
        return self._store.get(persona_id)

    def recommend(self, persona, **kwargs):
        raise NoEvidence("stub corpus has one app")


class TestClassifyTurn:
    def test_describe_project_with_category(self):
        turn = classify_turn("my project is an action climbing game")
        assert turn.intent is Intent.DESCRIBE_PROJECT
        assert turn.payload["vr_category"] is C.ACTION

    def test_request_persona_with_dimension(self):
        turn = classify_turn("generate a persona for motion sickness")
        assert turn.intent is Intent.REQUEST_PERSONA
        assert turn.payload["requested_dimension"] is D.VESTIBULAR

    def test_unknown_gibberish(self):
        assert classify_turn("asdf").intent is Intent.UNKNOWN

    def test_ask_requirements(self):
        turn = classify_turn("what are the requirements of persona 2?")
        assert turn.intent is Intent.ASK_REQUIREMENTS
        assert turn.payload["persona_ordinal"] == 2

    def test_request_related(self):
        assert classify_turn("show me similar users in other apps").intent is Intent.REQUEST_RELATED

    def test_implicit_description(self):
        turn = classify_turn("a horror exploration game set in a manor")
        assert turn.intent is Intent.DESCRIBE_PROJECT
        assert turn.payload["vr_category"] is C.HORROR

    def test_deterministic(self):
        text = "my project is a social hangout app"
        assert classify_turn(text) == classify_turn(text)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            classify_turn("   ")


class TestAdvance:
    def test_fresh_session_describe(self):
        session = Session(session_id="s1")
        engine = StubEngine()
        outcome = advance(session, classify_turn("my project is an action game"), engine)
        assert session.state is SessionState.READY
        assert session.ctx is not None
        assert outcome.error is None
        assert len(session.transcript) == 2

    def test_ready_request_persona(self):
        session = Session(session_id="s1")
        engine = StubEngine()
        advance(session, classify_turn("my project is an action game"), engine)
        outcome = advance(session, classify_turn("generate a persona"), engine)
        assert session.state is SessionState.READY
        assert len(session.personas) == 1
        assert outcome.persona is not None
        assert outcome.persona.display_name in outcome.reply

    def test_request_related_before_project_is_illegal(self):
        session = Session(session_id="s1")
        outcome = advance(session, classify_turn("show me similar personas in other apps"),
                          StubEngine())
        assert outcome.error == "illegal_transition"
        assert session.state is SessionState.AWAITING_PROJECT

    def test_persona_before_project_guides(self):
        session = Session(session_id="s1")
        outcome = advance(session, classify_turn("make a persona"), StubEngine())
        assert outcome.error == "illegal_transition"
        assert "project" in outcome.reply.lower()

    def test_no_evidence_returns_to_ready(self):
        session = Session(session_id="s1")
        engine = StubEngine(fail_with=NoEvidence("empty category"))
        advance(session, classify_turn("my project is an action game"), engine)
        outcome = advance(session, classify_turn("generate a persona"), engine)
        assert outcome.error == "no_evidence"
        assert session.state is SessionState.READY
        assert session.personas == []

    def test_provider_failure_goes_failed_then_describe_resets(self):
        session = Session(session_id="s1")
        engine = StubEngine(fail_with=ProviderUnavailable("down"))
        advance(session, classify_turn("my project is an action game"), engine)
        outcome = advance(session, classify_turn("generate a persona"), engine)
        assert outcome.error == "generation_failed"
        assert session.state is SessionState.FAILED
        advance(session, classify_turn("my project is a puzzle game"), engine)
        assert session.state is SessionState.READY

    def test_clarification_when_no_category(self):
        session = Session(session_id="s1")
        outcome = advance(session, classify_turn("my project is a really cool thing"),
                          StubEngine())
        assert session.state is SessionState.AWAITING_PROJECT
        assert "action" in outcome.reply and "sports" in outcome.reply

    def test_ask_requirements_replies_with_list(self):
        session = Session(session_id="s1")
        engine = StubEngine()
        advance(session, classify_turn("my project is an action game"), engine)
        advance(session, classify_turn("generate a persona"), engine)
        outcome = advance(session, classify_turn("what are the requirements?"), engine)
        persona = engine.load_persona(session.personas[0])
        for req in persona.requirements:
            assert req in outcome.reply

    def test_transcript_strictly_grows(self):
        session = Session(session_id="s1")
        engine = StubEngine()
        texts = ["asdf", "my project is an action game", "generate a persona", "zzz"]
        last = 0
        for text in texts:
            advance(session, classify_turn(text), engine)
            assert len(session.transcript) > last
            last = len(session.transcript)

    def test_exhaustive_state_intent_table(self):
        """Every (state, intent) pair lands in a defined state with a reply."""
        engine = StubEngine()
        all_intents = list(Intent)
        sample_turns = {
            Intent.DESCRIBE_PROJECT: classify_turn("my project is an action game"),
            Intent.REQUEST_PERSONA: classify_turn("generate a persona"),
            Intent.ASK_REQUIREMENTS: classify_turn("what are the requirements?"),
            Intent.REQUEST_RELATED: classify_turn("similar personas in other apps"),
            Intent.UNKNOWN: classify_turn("asdf"),
        }
        for state, intent in itertools.product(SessionState, all_intents):
            session = Session(session_id="sx", state=state)
            if state is not SessionState.AWAITING_PROJECT:
                session.ctx = __import__("personamine.models", fromlist=["ProjectContext"]).ProjectContext(
                    vr_category=C.ACTION, description="d"
                )
            outcome = advance(session, sample_turns[intent], engine)
            assert isinstance(outcome.reply, str) and outcome.reply
            assert session.state in SessionState

    def test_session_isolation(self):
        engine = StubEngine()
        s1, s2 = Session(session_id="a"), Session(session_id="b")
        advance(s1, classify_turn("my project is an action game"), engine)
        advance(s2, classify_turn("my project is a horror game"), engine)
        advance(s1, classify_turn("generate a persona"), engine)
        assert s1.personas and not s2.personas
        assert s1.ctx.vr_category is C.ACTION
        assert s2.ctx.vr_category is C.HORROR


class TestSessionStore:
    def test_event_log_round_trip(self, tmp_path):
        store = SessionStore(tmp_path)
        manager = SessionManager(StubEngine(), store)
        session = manager.create_session()
        manager.handle_turn(session.session_id, "my project is an action game")
        manager.handle_turn(session.session_id, "generate a persona")

        reloaded = store.load(session.session_id)
        assert reloaded is not None
        assert reloaded.state is SessionState.READY
        assert reloaded.personas == session.personas
        assert [e.text for e in reloaded.transcript] == [e.text for e in session.transcript]
        assert reloaded.ctx.vr_category is C.ACTION

    def test_unknown_session_raises(self, tmp_path):
        manager = SessionManager(StubEngine(), SessionStore(tmp_path))
        with pytest.raises(KeyError):
            manager.handle_turn("nope", "hello")

    def test_concurrent_sessions_no_lost_entries(self, tmp_path):
        engine = StubEngine()
        manager = SessionManager(engine, SessionStore(tmp_path))
        sessions = [manager.create_session() for _ in range(10)]
        turns = [
            "my project is an action game",
            "generate a persona",
            "what are the requirements?",
            "similar personas in other apps",
            "generate another persona",
        ]
        errors = []

        def run(session):
            try:
                for text in turns:
                    manager.handle_turn(session.session_id, text)
            except Exception as exc:  # noqa: BLE001 - collected for assertion
                errors.append(exc)

        threads = [threading.Thread(target=run, args=(s,)) for s in sessions]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert not errors
        for session in sessions:
            live = manager.get(session.session_id)
            assert len(live.transcript) == 2 * len(turns)
            replayed = manager.store.load(session.session_id)
            assert len(replayed.transcript) == 2 * len(turns)

"""Event-sourced session persistence and the per-session concurrency gate."""

from __future__ import annotations

import json
import threading
import uuid
from pathlib import Path

from ..errors import TurnInFlight
from ..models import DisabilityDimension, ProjectContext, VrCategory
from ..util import parse_rfc3339, to_rfc3339, utcnow
from .intents import classify_turn
from .machine import Session, SessionState, TranscriptEntry, TurnOutcome, advance


class SessionStore:
    """One events-{session_id}.jsonl per session; state rebuilds by replay."""

    def __init__(self, directory: str | Path):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)

    def _path(self, session_id: str) -> Path:
        return self.directory / f"events-{session_id}.jsonl"

    def append(self, session_id: str, events: list[dict]) -> None:
        with open(self._path(session_id), "a", encoding="utf-8") as fh:
            for event in events:
                fh.write(json.dumps(event, ensure_ascii=False) + "\n")

    def exists(self, session_id: str) -> bool:
        return self._path(session_id).exists()

    def events(self, session_id: str) -> list[dict]:
        path = self._path(session_id)
        if not path.exists():
            return []
        out = []
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                if line.strip():
                    out.append(json.loads(line))
        return out

    def load(self, session_id: str) -> Session | None:
        events = self.events(session_id)
        if not events:
            return None
        session = Session(session_id=session_id)
        for event in events:
            kind = event.get("event")
            if kind == "student_turn":
                session.transcript.append(
                    TranscriptEntry("student", event["text"], parse_rfc3339(event["ts"]))
                )
            elif kind == "system_reply":
                session.transcript.append(
                    TranscriptEntry("system", event["text"], parse_rfc3339(event["ts"]))
                )
            elif kind == "ctx":
                requested = event.get("requested_dimension")
                session.ctx = ProjectContext(
                    vr_category=VrCategory(event["vr_category"]),
                    description=event["description"],
                    requested_dimension=(
                        DisabilityDimension(requested) if requested else None
                    ),
                )
            elif kind == "persona_added":
                session.personas.append(event["persona_id"])
            elif kind == "state":
                session.state = SessionState(event["value"])
        return session


class SessionManager:
    """Owns live sessions; one in-flight advance per session."""

    def __init__(self, engine, store: SessionStore, clock=utcnow,
                 lock_timeout: float = 30.0):
        self.engine = engine
        self.store = store
        self.clock = clock
        self.lock_timeout = lock_timeout
        self._sessions: dict[str, Session] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._registry_lock = threading.Lock()

    def create_session(self) -> Session:
        session_id = uuid.uuid4().hex[:12]
        session = Session(session_id=session_id)
        with self._registry_lock:
            self._sessions[session_id] = session
            self._locks[session_id] = threading.Lock()
        self.store.append(session_id, [{"event": "created", "ts": to_rfc3339(self.clock())}])
        return session

    def get(self, session_id: str) -> Session | None:
        with self._registry_lock:
            session = self._sessions.get(session_id)
        if session is not None:
            return session
        session = self.store.load(session_id)
        if session is not None:
            with self._registry_lock:
                self._sessions.setdefault(session_id, session)
                self._locks.setdefault(session_id, threading.Lock())
        return session

    def handle_turn(self, session_id: str, text: str) -> TurnOutcome:
        session = self.get(session_id)
        if session is None:
            raise KeyError(session_id)
        lock = self._locks[session_id]
        if not lock.acquire(timeout=self.lock_timeout):
            raise TurnInFlight(f"session {session_id} already has a turn in flight")
        try:
            turn = classify_turn(text)
            before_ctx = session.ctx
            before_state = session.state
            before_personas = len(session.personas)
            outcome = advance(session, turn, self.engine, clock=self.clock)

            events: list[dict] = [
                {
                    "event": "student_turn",
                    "text": turn.text,
                    "intent": turn.intent.value,
                    "ts": to_rfc3339(session.transcript[-2].ts),
                }
            ]
            if session.ctx is not before_ctx and session.ctx is not None:
                events.append(
                    {
                        "event": "ctx",
                        "vr_category": session.ctx.vr_category.value,
                        "description": session.ctx.description,
                        "requested_dimension": (
                            session.ctx.requested_dimension.value
                            if session.ctx.requested_dimension
                            else None
                        ),
                    }
                )
            for persona_id in session.personas[before_personas:]:
                events.append({"event": "persona_added", "persona_id": persona_id})
            if session.state is not before_state:
                events.append({"event": "state", "value": session.state.value})
            events.append(
                {
                    "event": "system_reply",
                    "text": outcome.reply,
                    "ts": to_rfc3339(session.transcript[-1].ts),
                }
            )
            self.store.append(session_id, events)
            return outcome
        finally:
            lock.release()

"""Conversational layer: intent routing, the session state machine, storage."""

from .intents import Intent, Turn, classify_turn
from .machine import Session, SessionState, TurnOutcome, advance
from .store import SessionManager, SessionStore

__all__ = [
    "Intent",
    "Turn",
    "classify_turn",
    "Session",
    "SessionState",
    "TurnOutcome",
    "advance",
    "SessionManager",
    "SessionStore",
]

"""Session state machine binding a project context to generation turns.

Illegal intents never raise out of advance: the turn is still transcribed,
the reply guides the user, and the outcome carries an error code so callers
(and tests) can see exactly which guard fired.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime
from enum import Enum

from ..errors import (
    ExtractionParseError,
    GroundingError,
    NoEvidence,
    ProviderUnavailable,
)
from ..models import Persona, ProjectContext, VrCategory
from ..util import utcnow
from .intents import Intent, Turn

HELP_TEXT = (
    "I build accessibility personas from real VR store reviews. Start with your "
    "project, e.g. \"My project is an action climbing game\". Then you can say "
    "\"generate a persona\", ask \"what are the requirements?\", or request "
    "\"similar personas in other apps\"."
)

CLARIFY_CATEGORY = (
    "Which category fits your project best: action, social, horror, puzzle, "
    "simulation, or sports? Describe it again including one of those."
)


class SessionState(str, Enum):
    AWAITING_PROJECT = "awaiting_project"
    READY = "ready"
    GENERATING = "generating"
    FAILED = "failed"


@dataclass
class TranscriptEntry:
    role: str  # "student" | "system"
    text: str
    ts: datetime

    def to_dict(self) -> dict:
        from ..util import to_rfc3339

        return {"role": self.role, "text": self.text, "ts": to_rfc3339(self.ts)}


@dataclass
class Session:
    session_id: str
    ctx: ProjectContext | None = None
    personas: list[str] = field(default_factory=list)
    transcript: list[TranscriptEntry] = field(default_factory=list)
    state: SessionState = SessionState.AWAITING_PROJECT


@dataclass
class TurnOutcome:
    reply: str
    persona: Persona | None = None
    error: str | None = None  # "illegal_transition" | "no_evidence" | "generation_failed"


def advance(session: Session, turn: Turn, engine, clock=utcnow) -> TurnOutcome:
    """Apply one turn. Always appends the turn and a reply to the transcript."""
    session.transcript.append(TranscriptEntry("student", turn.text, clock()))
    outcome = _dispatch(session, turn, engine)
    session.transcript.append(TranscriptEntry("system", outcome.reply, clock()))
    return outcome


def _dispatch(session: Session, turn: Turn, engine) -> TurnOutcome:
    if session.state is SessionState.GENERATING:
        # Only reachable if per-session exclusion is bypassed.
        return TurnOutcome(
            reply="A persona is still being generated for this session; try again in a moment.",
            error="illegal_transition",
        )

    if turn.intent is Intent.DESCRIBE_PROJECT:
        return _describe_project(session, turn)
    if turn.intent is Intent.UNKNOWN:
        return TurnOutcome(reply=HELP_TEXT)

    if session.state is not SessionState.READY:
        return TurnOutcome(
            reply=(
                "Tell me about your project first, e.g. \"My project is a horror "
                "exploration game\". Then I can generate personas."
            ),
            error="illegal_transition",
        )

    if turn.intent is Intent.REQUEST_PERSONA:
        return _request_persona(session, turn, engine)
    if turn.intent is Intent.ASK_REQUIREMENTS:
        return _ask_requirements(session, turn, engine)
    if turn.intent is Intent.REQUEST_RELATED:
        return _request_related(session, engine)
    return TurnOutcome(reply=HELP_TEXT)  # defensive: no intent falls through


def _describe_project(session: Session, turn: Turn) -> TurnOutcome:
    category: VrCategory | None = turn.payload.get("vr_category")
    if category is None:
        return TurnOutcome(reply=CLARIFY_CATEGORY)
    session.ctx = ProjectContext(
        vr_category=category,
        description=turn.payload.get("description", turn.text)[:2000],
        requested_dimension=turn.payload.get("requested_dimension"),
    )
    session.state = SessionState.READY
    return TurnOutcome(
        reply=(
            f"Got it - a {category.value} project. Say \"generate a persona\" to meet "
            f"a user shaped by the most prominent accessibility barrier reported in "
            f"{category.value} VR apps."
        )
    )


def _request_persona(session: Session, turn: Turn, engine) -> TurnOutcome:
    ctx = ProjectContext(
        vr_category=session.ctx.vr_category,
        description=session.ctx.description,
        requested_dimension=turn.payload.get(
            "requested_dimension", session.ctx.requested_dimension
        ),
    )
    session.state = SessionState.GENERATING
    try:
        persona = engine.generate_persona(ctx)
    except NoEvidence as exc:
        session.state = SessionState.READY
        return TurnOutcome(
            reply=(
                f"I could not find review evidence for that request ({exc}). Try "
                f"another dimension or a different project category."
            ),
            error="no_evidence",
        )
    except (ProviderUnavailable, GroundingError, ExtractionParseError) as exc:
        session.state = SessionState.FAILED
        return TurnOutcome(
            reply=(
                f"Persona generation failed ({type(exc).__name__}). Describe your "
                f"project again to reset, or retry later."
            ),
            error="generation_failed",
        )
    session.personas.append(persona.persona_id)
    session.state = SessionState.READY
    quote = persona.quotes[0].text if persona.quotes else ""
    return TurnOutcome(
        reply=(
            f"Meet {persona.display_name}, shaped by {persona.dimension.value} "
            f"barriers reported in {persona.vr_category.value} apps. "
            f"\"{quote}\" - ask about requirements or related personas."
        ),
        persona=persona,
    )


def _ask_requirements(session: Session, turn: Turn, engine) -> TurnOutcome:
    if not session.personas:
        return TurnOutcome(
            reply="No personas yet - say \"generate a persona\" first.",
        )
    ordinal = turn.payload.get("persona_ordinal")
    if ordinal is not None and 1 <= ordinal <= len(session.personas):
        persona_id = session.personas[ordinal - 1]
    else:
        persona_id = session.personas[-1]
    persona = engine.load_persona(persona_id)
    if persona is None:
        return TurnOutcome(reply="That persona is no longer available.", error="no_evidence")
    lines = "; ".join(persona.requirements)
    return TurnOutcome(reply=f"{persona.display_name} needs: {lines}")


def _request_related(session: Session, engine) -> TurnOutcome:
    if not session.personas:
        return TurnOutcome(
            reply="No personas yet - say \"generate a persona\" first.",
        )
    persona = engine.load_persona(session.personas[-1])
    if persona is None:
        return TurnOutcome(reply="That persona is no longer available.", error="no_evidence")
    try:
        bundles = engine.recommend(persona)
    except NoEvidence:
        return TurnOutcome(
            reply=(
                f"No other app in the corpus has {persona.dimension.value} reviews "
                f"to compare against."
            ),
            error="no_evidence",
        )
    apps = ", ".join(b.hits[0].chunk.app_id for b in bundles)
    return TurnOutcome(
        reply=(
            f"Users report {persona.dimension.value} barriers in these other apps: "
            f"{apps}. Ask for a persona with that dimension to explore one."
        )
    )

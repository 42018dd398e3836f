"""HTTP JSON API over sessions, personas, and corpus stats."""

from __future__ import annotations

from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from ..engine import Engine
from ..errors import (
    NoEvidence,
    PersonamineError,
    ProviderUnavailable,
    TurnInFlight,
)
from ..session import SessionManager


class TurnRequest(BaseModel):
    text: str


def _error(status: int, code: str, message: str, detail=None) -> JSONResponse:
    body = {"code": code, "message": message}
    if detail is not None:
        body["detail"] = detail
    return JSONResponse(status_code=status, content=body)


def build_app(engine: Engine, sessions: SessionManager, cors_origin: str | None = None
              ) -> FastAPI:
    app = FastAPI(title="personamine", docs_url=None, redoc_url=None)
    if cors_origin:
        app.add_middleware(
            CORSMiddleware,
            allow_origins=[cors_origin],
            allow_methods=["*"],
            allow_headers=["*"],
        )

    @app.exception_handler(RequestValidationError)
    async def validation_handler(request: Request, exc: RequestValidationError):
        return _error(400, "bad_request", "invalid request body", detail=exc.errors())

    @app.exception_handler(PersonamineError)
    async def domain_handler(request: Request, exc: PersonamineError):
        if isinstance(exc, TurnInFlight):
            return _error(409, "bad_request", str(exc))
        if isinstance(exc, NoEvidence):
            return _error(422, "no_evidence", str(exc))
        if isinstance(exc, ProviderUnavailable):
            return _error(503, "provider_down", "a backing provider is unavailable")
        return _error(500, "internal", "internal error")

    @app.post("/sessions")
    def create_session():
        session = sessions.create_session()
        return {"session_id": session.session_id}

    @app.post("/sessions/{session_id}/turns")
    def post_turn(session_id: str, body: TurnRequest):
        if not body.text.strip():
            return _error(400, "bad_request", "turn text must be non-empty")
        try:
            outcome = sessions.handle_turn(session_id, body.text)
        except KeyError:
            return _error(404, "not_found", f"no session {session_id}")
        session = sessions.get(session_id)
        payload = {"reply": outcome.reply, "state": session.state.value}
        if outcome.error is not None:
            payload["error"] = outcome.error
        if outcome.persona is not None:
            payload["persona_card"] = outcome.persona.to_card_dict()
        return payload

    @app.get("/sessions/{session_id}/events")
    def session_events(session_id: str):
        if sessions.get(session_id) is None:
            return _error(404, "not_found", f"no session {session_id}")
        return {"events": sessions.store.events(session_id)}

    @app.get("/chunks/{chunk_id}")
    def get_chunk(chunk_id: str):
        chunk = engine.index.get_chunk(chunk_id)
        if chunk is None:
            return _error(404, "not_found", f"no chunk {chunk_id}")
        return chunk.to_dict()

    @app.get("/personas/{persona_id}")
    def get_persona(persona_id: str):
        raw = engine.persona_bytes(persona_id)
        if raw is None:
            return _error(404, "not_found", f"no persona {persona_id}")
        return Response(content=raw, media_type="application/json")

    @app.get("/personas/{persona_id}/card")
    def get_card(persona_id: str):
        raw = engine.card_bytes(persona_id)
        if raw is None:
            return _error(404, "not_found", f"no persona {persona_id}")
        return Response(content=raw, media_type="application/json")

    @app.get("/stats/prevalence")
    def stats_prevalence():
        return engine.prevalence_json()

    @app.get("/healthz")
    def healthz():
        return {
            "status": "ok",
            "index_count": engine.index_count,
            "provider_ids": engine.provider_ids,
        }

    return app

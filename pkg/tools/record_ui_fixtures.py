#!/usr/bin/env python3
"""Record gateway traffic for the frontend test suite.

Drives the in-process HTTP app (fixture corpus, mock providers) through a
scripted six-turn session and dumps every response the UI consumes into
frontend/tests/fixtures/session_script.json.
"""

from __future__ import annotations

import json
import sys
import tempfile
from pathlib import Path
from urllib.parse import quote

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))
sys.path.insert(0, str(ROOT / "tests"))

from fastapi.testclient import TestClient

from personamine.gateway.api import build_app
from personamine.session import SessionManager, SessionStore

from test_gateway import build_fixture_engine

TURNS = [
    "hello there",
    "make a persona",
    "my project is an action climbing game",
    "generate a persona",
    "what are the requirements?",
    "generate a persona for hearing issues",
]

OUT = ROOT / "frontend" / "tests" / "fixtures" / "session_script.json"


def main() -> None:
    tmp = Path(tempfile.mkdtemp(prefix="uifix-"))
    engine = build_fixture_engine(tmp)
    manager = SessionManager(engine, SessionStore(tmp / "sessions"))
    client = TestClient(build_app(engine, manager))

    session_id = client.post("/sessions").json()["session_id"]
    turns = []
    persona_ids = []
    for text in TURNS:
        resp = client.post(f"/sessions/{session_id}/turns", json={"text": text})
        body = resp.json()
        turns.append({"text": text, "status": resp.status_code, "body": body})
        if "persona_card" in body:
            persona_ids.append(body["persona_card"]["persona_id"])

    personas = {}
    cards = {}
    chunks = {}
    for pid in persona_ids:
        persona = client.get(f"/personas/{pid}").json()
        personas[pid] = persona
        cards[pid] = client.get(f"/personas/{pid}/card").json()
        for q in persona["quotes"]:
            cid = q["source_chunk_id"]
            if cid not in chunks:
                chunks[cid] = client.get(f"/chunks/{quote(cid, safe='')}").json()

    bundle = {
        "session_id": session_id,
        "turns": turns,
        "events": client.get(f"/sessions/{session_id}/events").json()["events"],
        "personas": personas,
        "cards": cards,
        "chunks": chunks,
        "healthz": client.get("/healthz").json(),
        "prevalence": client.get("/stats/prevalence").json(),
    }
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(bundle, ensure_ascii=False, indent=2) + "\n", encoding="utf-8")
    print(f"recorded {len(turns)} turns, {len(personas)} personas, "
          f"{len(chunks)} chunks -> {OUT}")


if __name__ == "__main__":
    main()

"""HTTP endpoints, error mapping, API/file parity, CLI exit codes."""

import concurrent.futures
import json
import subprocess
import sys
from pathlib import Path

import pytest
from fastapi.testclient import TestClient

from personamine.engine import Engine
from personamine.gateway.api import build_app
from personamine.generate import MockLlmProvider
from personamine.index import HashedBowProvider, VectorIndex, chunk_review, embed
from personamine.models import DisabilityDimension, VrCategory
from personamine.session import SessionManager, SessionStore

from conftest import FIXTURE_DIR

D = DisabilityDimension
C = VrCategory

ROOT = Path(__file__).resolve().parent.parent


def build_fixture_engine(tmp_path):
    """Pipeline run (in-process) over the shipped fixture dump."""
    from personamine.corpus import read_raw_corpus
    from personamine.curation.categories import load_default_mapping
    from personamine.curation.lexicon import load_default_lexicon
    from personamine.curation.pipeline import DenyLists, curate, prevalence
    from personamine.ingest import load_catalog
    from personamine.ingest.run import run_ingest
    from personamine.ingest.scraper import load_default_profile
    from personamine.ingest.transport import ReplayTransport
    from personamine.models import StoreId

    catalog = load_catalog(FIXTURE_DIR / "apps.json")
    transport = ReplayTransport(FIXTURE_DIR / "replay")
    profile = load_default_profile()
    raw = run_ingest(catalog, StoreId.STEAM, 50, transport, profile)
    raw += run_ingest(catalog, StoreId.METAQUEST, 50, transport, profile)
    curated = curate(
        raw,
        load_default_lexicon(),
        load_default_mapping(),
        DenyLists.from_dir(ROOT / "src" / "personamine" / "conf" / "deny"),
    )
    kept = [c for c in curated if c.kept]
    provider = HashedBowProvider()
    index = VectorIndex(dim=provider.dim, provider_id=provider.provider_id)
    chunks = []
    for review in kept:
        chunks.extend(chunk_review(review))
    index.upsert(list(zip(chunks, embed([c.text for c in chunks], provider))))
    return Engine(
        index=index,
        prevalence=prevalence(curated),
        embedder=provider,
        llm=MockLlmProvider(),
        personas_dir=tmp_path / "personas",
    )


@pytest.fixture()
def client(tmp_path):
    engine = build_fixture_engine(tmp_path)
    manager = SessionManager(engine, SessionStore(tmp_path / "sessions"))
    app = build_app(engine, manager, cors_origin="http://localhost:5173")
    return TestClient(app)


class TestEndpoints:
    def test_healthz_reports_index_count(self, client):
        created = client.post("/sessions")
        assert created.status_code == 200
        health = client.get("/healthz").json()
        assert health["status"] == "ok"
        assert health["index_count"] > 0
        assert "mock" in health["provider_ids"]

    def test_turn_on_fresh_session_asks_for_project(self, client):
        sid = client.post("/sessions").json()["session_id"]
        resp = client.post(f"/sessions/{sid}/turns", json={"text": "make a persona"})
        assert resp.status_code == 200
        body = resp.json()
        assert "project" in body["reply"].lower()
        assert "persona_card" not in body
        assert body["state"] == "awaiting_project"

    def test_full_turn_flow_returns_card(self, client):
        sid = client.post("/sessions").json()["session_id"]
        client.post(f"/sessions/{sid}/turns",
                    json={"text": "my project is an action climbing game"})
        resp = client.post(f"/sessions/{sid}/turns", json={"text": "generate a persona"})
        body = resp.json()
        assert body["state"] == "ready"
        card = body["persona_card"]
        assert card["persona_id"].startswith("p-")
        assert card["dimension"] == "vestibular"  # most prevalent for action fixtures

    def test_unknown_persona_404(self, client):
        resp = client.get("/personas/unknown")
        assert resp.status_code == 404
        assert resp.json()["code"] == "not_found"

    def test_unknown_session_404(self, client):
        resp = client.post("/sessions/ghost/turns", json={"text": "hello project"})
        assert resp.status_code == 404

    def test_empty_turn_400(self, client):
        sid = client.post("/sessions").json()["session_id"]
        resp = client.post(f"/sessions/{sid}/turns", json={"text": "   "})
        assert resp.status_code == 400
        resp = client.post(f"/sessions/{sid}/turns", json={})
        assert resp.status_code == 400

    def test_persona_http_matches_disk_bytes(self, client, tmp_path):
        sid = client.post("/sessions").json()["session_id"]
        client.post(f"/sessions/{sid}/turns",
                    json={"text": "my project is an action climbing game"})
        card = client.post(
            f"/sessions/{sid}/turns", json={"text": "generate a persona"}
        ).json()["persona_card"]
        pid = card["persona_id"]
        over_http = client.get(f"/personas/{pid}").content
        on_disk = (tmp_path / "personas" / f"{pid}.json").read_bytes()
        assert over_http == on_disk
        card_http = client.get(f"/personas/{pid}/card").content
        card_disk = (tmp_path / "personas" / f"{pid}.card.json").read_bytes()
        assert card_http == card_disk

    def test_prevalence_grid(self, client):
        grid = client.get("/stats/prevalence").json()
        assert set(grid.keys()) == {c.value for c in C}
        for row in grid.values():
            assert set(row.keys()) == {d.value for d in D}
        assert grid["action"]["vestibular"] > 0

    def test_chunk_endpoint_serves_quote_sources(self, client):
        sid = client.post("/sessions").json()["session_id"]
        client.post(f"/sessions/{sid}/turns",
                    json={"text": "my project is an action climbing game"})
        card = client.post(
            f"/sessions/{sid}/turns", json={"text": "generate a persona"}
        ).json()["persona_card"]
        persona = client.get(f"/personas/{card['persona_id']}").json()
        from urllib.parse import quote as urlquote

        for quote in persona["quotes"]:
            chunk = client.get(f"/chunks/{urlquote(quote['source_chunk_id'], safe='')}")
            assert chunk.status_code == 200
            assert quote["text"] in chunk.json()["text"]
        assert client.get("/chunks/ghost%2300").status_code == 404

    def test_session_events_endpoint(self, client):
        sid = client.post("/sessions").json()["session_id"]
        client.post(f"/sessions/{sid}/turns", json={"text": "my project is a puzzle game"})
        events = client.get(f"/sessions/{sid}/events").json()["events"]
        kinds = [e["event"] for e in events]
        assert kinds[0] == "created"
        assert "student_turn" in kinds and "system_reply" in kinds

    def test_concurrent_turns_no_lost_entries(self, client):
        sids = [client.post("/sessions").json()["session_id"] for _ in range(10)]
        texts = [
            "my project is an action climbing game",
            "generate a persona",
            "what are the requirements?",
            "similar personas in other apps",
            "generate another persona",
        ]
        jobs = [(sid, text) for sid in sids for text in texts]

        def run(job):
            sid, text = job
            return client.post(f"/sessions/{sid}/turns", json={"text": text})

        with concurrent.futures.ThreadPoolExecutor(max_workers=16) as pool:
            responses = list(pool.map(run, jobs))
        assert len(responses) == 50
        assert all(r.status_code == 200 for r in responses)
        for sid in sids:
            events = client.get(f"/sessions/{sid}/events").json()["events"]
            student = [e for e in events if e["event"] == "student_turn"]
            replies = [e for e in events if e["event"] == "system_reply"]
            assert len(student) == 5
            assert len(replies) == 5


def run_cli(*argv, cwd=None):
    return subprocess.run(
        [sys.executable, "-m", "personamine.gateway.cli", *argv],
        capture_output=True, text=True, cwd=cwd or ROOT,
    )


class TestCli:
    def test_unknown_subcommand_exit_2(self):
        proc = run_cli("frobnicate")
        assert proc.returncode == 2

    def test_missing_input_exit_1(self, tmp_path):
        proc = run_cli(
            "curate", "--in", str(tmp_path / "absent.jsonl"),
            "--out", str(tmp_path / "out.jsonl"),
        )
        assert proc.returncode == 1
        assert "absent.jsonl" in proc.stderr

    def test_generate_session_less(self, tmp_path):
        raw = tmp_path / "raw.jsonl"
        curated = tmp_path / "curated.jsonl"
        prev = tmp_path / "prevalence.json"
        idx = tmp_path / "index"
        out = tmp_path / "out"
        assert run_cli(
            "ingest", "--store", "steam", "--apps", str(FIXTURE_DIR / "apps.json"),
            "--top", "50", "--out", str(raw), "--replay", str(FIXTURE_DIR / "replay"),
        ).returncode == 0
        assert run_cli(
            "curate", "--in", str(raw), "--out", str(curated), "--stats", str(prev),
        ).returncode == 0
        assert run_cli(
            "index", "--in", str(curated), "--provider", "test", "--out", str(idx),
        ).returncode == 0
        proc = run_cli(
            "generate", "--session-less", "--category", "action",
            "--dimension", "vestibular", "--mock-providers",
            "--index", str(idx), "--stats", str(prev), "--out", str(out),
        )
        assert proc.returncode == 0
        persona = json.loads((out / "persona.json").read_text())
        assert persona["dimension"] == "vestibular"
        assert (out / "persona_card.json").exists()

    def test_generate_without_evidence_exit_1(self, tmp_path):
        # index an empty corpus: generation must fail cleanly
        curated = tmp_path / "curated.jsonl"
        curated.write_text("")
        idx = tmp_path / "index"
        prev = tmp_path / "prevalence.json"
        assert run_cli("index", "--in", str(curated), "--out", str(idx)).returncode == 0
        assert run_cli("stats", "--in", str(curated), "--out", str(prev)).returncode == 0
        proc = run_cli(
            "generate", "--session-less", "--category", "action", "--mock-providers",
            "--index", str(idx), "--stats", str(prev), "--out", str(tmp_path / "out"),
        )
        assert proc.returncode == 1

"""Umbrella CLI: ingest -> curate -> index -> generate -> serve, plus stats.

Exit codes: 0 success, 1 domain/file error, 2 usage error. Every subcommand
honors --replay so the full pipeline runs offline from recorded fixtures.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from ..corpus import (
    read_curated_corpus,
    read_raw_corpus,
    write_curated_corpus,
    write_raw_corpus,
)
from ..curation.categories import CategoryMapping, default_categories_path
from ..curation.lexicon import KeywordLexicon, default_lexicon_path
from ..curation.pipeline import DenyLists, curate, prevalence
from ..engine import Engine, dump_json
from ..errors import PersonamineError
from ..generate.providers import StubPhotoProvider, get_llm_provider
from ..index.chunking import DEFAULT_MAX_TOKENS, chunk_review
from ..index.embedding import embed, get_embedding_provider
from ..index.store import VectorIndex
from ..ingest.catalog import load_catalog
from ..ingest.run import run_ingest
from ..ingest.scraper import SelectorProfile, default_profile_path
from ..ingest.transport import HttpTransport, ReplayTransport
from ..models import (
    DisabilityDimension,
    ProjectContext,
    StoreId,
    VrCategory,
    prevalence_from_json,
    prevalence_to_json,
)

DEFAULT_DENY_DIR = Path(__file__).resolve().parent.parent / "conf" / "deny"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="personamine",
        description="Mine accessibility-related VR store reviews into grounded personas.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--replay", type=Path, default=None,
        help="Fixture directory for offline runs (transport or LLM fixtures).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", parents=[common], help="Fetch raw reviews from a store")
    p.add_argument("--store", choices=[s.value for s in StoreId], required=True)
    p.add_argument("--apps", type=Path, required=True, help="App catalog JSON")
    p.add_argument("--top", type=int, default=50)
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--append", action="store_true", help="Append to an existing corpus file")
    p.add_argument("--page-limit", type=int, default=10)
    p.add_argument("--profile", type=Path, default=None, help="Scraper selector profile TOML")
    p.add_argument("--record", type=Path, default=None, help="Record live fetches here")
    p.add_argument("--rate", type=float, default=1.0, help="Requests per second per host")

    p = sub.add_parser("curate", parents=[common], help="Filter and classify raw reviews")
    p.add_argument("--in", dest="input", type=Path, required=True)
    p.add_argument("--lexicon", type=Path, default=None)
    p.add_argument("--categories", type=Path, default=None)
    p.add_argument("--deny", type=Path, default=None)
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--stats", type=Path, default=None, help="Write prevalence JSON here")

    p = sub.add_parser("index", parents=[common], help="Chunk, embed and persist the index")
    p.add_argument("--in", dest="input", type=Path, required=True)
    p.add_argument("--provider", choices=["test", "remote"], default="test")
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--max-tokens", type=int, default=DEFAULT_MAX_TOKENS)

    p = sub.add_parser("generate", parents=[common], help="Generate one persona")
    p.add_argument("--session-less", action="store_true",
                   help="Generate directly from flags, outside any chat session")
    p.add_argument("--category", choices=[c.value for c in VrCategory], required=True)
    p.add_argument("--dimension", choices=[d.value for d in DisabilityDimension], default=None)
    p.add_argument("--description", default="")
    p.add_argument("--index", dest="index_dir", type=Path, default=Path("data/index"))
    p.add_argument("--stats", type=Path, default=Path("data/prevalence.json"))
    p.add_argument("--k", type=int, default=8)
    p.add_argument("--mock-providers", action="store_true")
    p.add_argument("--photo", choices=["off", "stub"], default="off")
    p.add_argument("--out", type=Path, default=Path("."), help="Directory for persona.json")

    p = sub.add_parser("serve", parents=[common], help="Run the HTTP gateway")
    p.add_argument("--config", type=Path, default=None)
    p.add_argument("--port", type=int, default=None)

    p = sub.add_parser("stats", parents=[common], help="Prevalence over a curated corpus")
    p.add_argument("--in", dest="input", type=Path, required=True)
    p.add_argument("--out", type=Path, default=None)

    return parser


def cmd_ingest(args) -> int:
    catalog = load_catalog(args.apps)
    if args.replay is not None:
        transport = ReplayTransport(args.replay)
    else:
        transport = HttpTransport(rate_per_second=args.rate, record_dir=args.record)
    profile = SelectorProfile.from_toml(args.profile or default_profile_path())
    reviews = run_ingest(
        catalog,
        StoreId(args.store),
        top=args.top,
        transport=transport,
        profile=profile,
        page_limit=args.page_limit,
    )
    count = write_raw_corpus(args.out, reviews, append=args.append)
    print(f"ingested {count} reviews from {args.store} into {args.out}")
    return 0


def cmd_curate(args) -> int:
    raw = read_raw_corpus(args.input)
    lexicon = KeywordLexicon.from_toml(args.lexicon or default_lexicon_path())
    mapping = CategoryMapping.from_toml(args.categories or default_categories_path())
    deny = DenyLists.from_dir(args.deny or DEFAULT_DENY_DIR)
    curated = curate(raw, lexicon, mapping, deny)
    write_curated_corpus(args.out, curated)
    kept = sum(1 for c in curated if c.kept)
    if args.stats is not None:
        counts = prevalence(curated)
        args.stats.parent.mkdir(parents=True, exist_ok=True)
        args.stats.write_text(dump_json(prevalence_to_json(counts)), encoding="utf-8")
    print(f"curated {len(curated)} reviews ({kept} kept) into {args.out}")
    return 0


def cmd_index(args) -> int:
    curated = [c for c in read_curated_corpus(args.input) if c.kept]
    provider = get_embedding_provider(args.provider)
    index = VectorIndex(dim=provider.dim, provider_id=provider.provider_id)
    chunks = []
    for review in curated:
        chunks.extend(chunk_review(review, max_tokens=args.max_tokens))
    if chunks:
        embeddings = embed([c.text for c in chunks], provider)
        index.upsert(list(zip(chunks, embeddings)))
    index.save(args.out)
    print(f"indexed {len(chunks)} chunks from {len(curated)} kept reviews into {args.out}")
    return 0


def cmd_generate(args) -> int:
    index = VectorIndex.load(args.index_dir)
    counts = prevalence_from_json(json.loads(args.stats.read_text(encoding="utf-8")))
    embedder = get_embedding_provider("test", dim=index.dim)
    if args.mock_providers:
        llm = get_llm_provider("mock")
    elif args.replay is not None:
        llm = get_llm_provider("replay", replay_dir=args.replay)
    else:
        llm = get_llm_provider("remote")
    photo = StubPhotoProvider() if args.photo == "stub" else None
    engine = Engine(
        index=index,
        prevalence=counts,
        embedder=embedder,
        llm=llm,
        photo_provider=photo,
        k=args.k,
        personas_dir=None,
    )
    ctx = ProjectContext(
        vr_category=VrCategory(args.category),
        description=args.description,
        requested_dimension=DisabilityDimension(args.dimension) if args.dimension else None,
    )
    persona = engine.generate_persona(ctx)
    args.out.mkdir(parents=True, exist_ok=True)
    (args.out / "persona.json").write_text(dump_json(persona.to_dict()), encoding="utf-8")
    (args.out / "persona_card.json").write_text(
        dump_json(persona.to_card_dict()), encoding="utf-8"
    )
    print(f"wrote {args.out / 'persona.json'} ({persona.persona_id})")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from ..session import SessionManager, SessionStore
    from .api import build_app
    from .config import build_engine, load_config

    cfg = load_config(args.config)
    if args.port is not None:
        cfg.port = args.port
    if args.replay is not None:
        cfg.llm_provider = "replay"
        cfg.llm_replay_dir = args.replay
    engine = build_engine(cfg)
    manager = SessionManager(
        engine, SessionStore(cfg.sessions_dir), lock_timeout=cfg.turn_lock_timeout
    )
    app = build_app(engine, manager, cors_origin=cfg.cors_origin)
    uvicorn.run(app, host=cfg.host, port=cfg.port, log_level="info")
    return 0


def cmd_stats(args) -> int:
    curated = read_curated_corpus(args.input)
    counts = prevalence(curated)
    as_json = prevalence_to_json(counts)
    if args.out is not None:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(dump_json(as_json), encoding="utf-8")
    print(json.dumps(as_json, indent=2))
    return 0


_COMMANDS = {
    "ingest": cmd_ingest,
    "curate": cmd_curate,
    "index": cmd_index,
    "generate": cmd_generate,
    "serve": cmd_serve,
    "stats": cmd_stats,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (PersonamineError, OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())

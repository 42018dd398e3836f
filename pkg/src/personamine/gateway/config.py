"""Service configuration: TOML file with sane defaults; secrets come from env
variables only (provider endpoints/keys are read inside the providers)."""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from ..engine import Engine
from ..generate.providers import StubPhotoProvider, get_llm_provider
from ..index.embedding import get_embedding_provider
from ..index.store import VectorIndex
from ..models import prevalence_from_json


@dataclass
class AppConfig:
    index_dir: Path = Path("data/index")
    prevalence: Path = Path("data/prevalence.json")
    personas_dir: Path = Path("data/personas")
    sessions_dir: Path = Path("data/sessions")

    k: int = 8
    retry_budget: int = 2

    llm_provider: str = "mock"  # mock | replay | remote
    llm_replay_dir: Path | None = None
    embed_provider: str = "test"  # test | remote
    photo_provider: str = "off"  # off | stub

    host: str = "127.0.0.1"
    port: int = 8000
    cors_origin: str = "http://localhost:5173"
    turn_lock_timeout: float = 30.0

    extra: dict = field(default_factory=dict)


def load_config(path: str | Path | None = None) -> AppConfig:
    cfg = AppConfig()
    if path is None:
        return cfg
    with open(path, "rb") as fh:
        data = tomllib.load(fh)
    paths = data.get("paths", {})
    cfg.index_dir = Path(paths.get("index_dir", cfg.index_dir))
    cfg.prevalence = Path(paths.get("prevalence", cfg.prevalence))
    cfg.personas_dir = Path(paths.get("personas_dir", cfg.personas_dir))
    cfg.sessions_dir = Path(paths.get("sessions_dir", cfg.sessions_dir))
    retrieval = data.get("retrieval", {})
    cfg.k = int(retrieval.get("k", cfg.k))
    generation = data.get("generation", {})
    cfg.retry_budget = int(generation.get("retry_budget", cfg.retry_budget))
    cfg.llm_provider = generation.get("llm_provider", cfg.llm_provider)
    if generation.get("llm_replay_dir"):
        cfg.llm_replay_dir = Path(generation["llm_replay_dir"])
    cfg.embed_provider = generation.get("embed_provider", cfg.embed_provider)
    cfg.photo_provider = generation.get("photo_provider", cfg.photo_provider)
    server = data.get("server", {})
    cfg.host = server.get("host", cfg.host)
    cfg.port = int(server.get("port", cfg.port))
    cfg.cors_origin = server.get("cors_origin", cfg.cors_origin)
    cfg.turn_lock_timeout = float(server.get("turn_lock_timeout", cfg.turn_lock_timeout))
    return cfg


def build_engine(cfg: AppConfig) -> Engine:
    index = VectorIndex.load(cfg.index_dir)
    prevalence = prevalence_from_json(
        json.loads(Path(cfg.prevalence).read_text(encoding="utf-8"))
    )
    embedder = get_embedding_provider(cfg.embed_provider, dim=index.dim)
    if embedder.provider_id != index.provider_id:
        raise ValueError(
            f"index was embedded with {index.provider_id!r} but config asks for "
            f"{embedder.provider_id!r}"
        )
    llm = get_llm_provider(cfg.llm_provider, replay_dir=cfg.llm_replay_dir)
    photo = StubPhotoProvider() if cfg.photo_provider == "stub" else None
    return Engine(
        index=index,
        prevalence=prevalence,
        embedder=embedder,
        llm=llm,
        photo_provider=photo,
        k=cfg.k,
        retry_budget=cfg.retry_budget,
        personas_dir=cfg.personas_dir,
    )

"""Embedding providers: a deterministic hashed bag-of-words for offline use
and a JSON-over-HTTP remote provider."""

from __future__ import annotations

import os
import threading
import zlib
from typing import Protocol

import numpy as np
import requests

from ..errors import DimensionMismatch, ProviderUnavailable
from ..models import Embedding
from ..util import word_tokens

DEFAULT_MAX_IN_FLIGHT = 2  # concurrent calls allowed against the remote endpoint


class EmbeddingProvider(Protocol):
    provider_id: str
    dim: int

    def embed_texts(self, texts: list[str]) -> np.ndarray:
        """Return an (n, dim) float64 matrix, one row per text."""
        ...


class HashedBowProvider:
    """Deterministic test embedder: crc32 token buckets, L2-normalized.

    Tokenization strips punctuation, so "motion sickness" and
    "motion sickness." embed identically.
    """

    def __init__(self, dim: int = 64):
        self.dim = dim
        self.provider_id = f"test-bow-{dim}"

    def embed_texts(self, texts: list[str]) -> np.ndarray:
        out = np.zeros((len(texts), self.dim), dtype=np.float64)
        for i, text in enumerate(texts):
            tokens = word_tokens(text) or [""]
            for tok in tokens:
                out[i, zlib.crc32(tok.encode("utf-8")) % self.dim] += 1.0
        return out


ENV_EMBED_URL = "PERSONAMINE_EMBED_URL"
ENV_EMBED_KEY = "PERSONAMINE_EMBED_KEY"


class RemoteEmbeddingProvider:
    """POST {"texts": [...]} -> {"vectors": [[...], ...]}; endpoint/key via env."""

    def __init__(self, endpoint: str | None = None, api_key: str | None = None,
                 dim: int = 384, timeout: float = 30.0,
                 max_in_flight: int = DEFAULT_MAX_IN_FLIGHT):
        self.endpoint = endpoint or os.environ.get(ENV_EMBED_URL, "")
        self._api_key = api_key or os.environ.get(ENV_EMBED_KEY, "")
        self.dim = dim
        self.timeout = timeout
        self.provider_id = "remote-embed"
        self._gate = threading.Semaphore(max_in_flight)
        if not self.endpoint:
            raise ProviderUnavailable(
                f"remote embedding endpoint not configured (set {ENV_EMBED_URL})"
            )

    def embed_texts(self, texts: list[str]) -> np.ndarray:
        headers = {"content-type": "application/json"}
        if self._api_key:
            headers["authorization"] = f"Bearer {self._api_key}"
        try:
            with self._gate:
                resp = requests.post(
                    self.endpoint, json={"texts": texts}, headers=headers,
                    timeout=self.timeout,
                )
            resp.raise_for_status()
            vectors = resp.json()["vectors"]
        except (requests.RequestException, KeyError, ValueError) as exc:
            raise ProviderUnavailable(f"embedding endpoint failed: {type(exc).__name__}") from exc
        mat = np.asarray(vectors, dtype=np.float64)
        if mat.ndim != 2 or mat.shape != (len(texts), self.dim):
            raise DimensionMismatch(
                f"provider returned shape {mat.shape}, expected ({len(texts)}, {self.dim})"
            )
        return mat


def embed(texts: list[str], provider: EmbeddingProvider) -> list[Embedding]:
    """One L2-normalized embedding per text, in input order."""
    if any(not t for t in texts):
        raise ValueError("texts must be non-empty strings")
    mat = provider.embed_texts(list(texts))
    if mat.shape != (len(texts), provider.dim):
        raise DimensionMismatch(
            f"provider returned shape {mat.shape}, expected ({len(texts)}, {provider.dim})"
        )
    norms = np.linalg.norm(mat, axis=1, keepdims=True)
    norms[norms == 0.0] = 1.0
    mat = mat / norms
    return [
        Embedding(vector=mat[i].copy(), dim=provider.dim, provider_id=provider.provider_id)
        for i in range(len(texts))
    ]


def get_embedding_provider(name: str, dim: int | None = None) -> EmbeddingProvider:
    if name == "test":
        return HashedBowProvider(dim=dim or 64)
    if name == "remote":
        return RemoteEmbeddingProvider(dim=dim or 384)
    raise ValueError(f"unknown embedding provider {name!r} (expected test|remote)")

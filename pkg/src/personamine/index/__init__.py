"""Chunking, embedding, and the persisted flat vector index."""

from .chunking import chunk_review, split_sentence_spans
from .embedding import (
    EmbeddingProvider,
    HashedBowProvider,
    RemoteEmbeddingProvider,
    embed,
    get_embedding_provider,
)
from .store import SearchFilter, VectorIndex

__all__ = [
    "chunk_review",
    "split_sentence_spans",
    "EmbeddingProvider",
    "HashedBowProvider",
    "RemoteEmbeddingProvider",
    "embed",
    "get_embedding_provider",
    "SearchFilter",
    "VectorIndex",
]

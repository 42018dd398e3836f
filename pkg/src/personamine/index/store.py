"""Flat vector index: exhaustive filtered cosine top-k over a few thousand
chunks, persisted as manifest.json + entries.jsonl with atomic replacement."""

from __future__ import annotations

import json
import os
import threading
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..errors import DimensionMismatch, PersistenceError
from ..kernels import masked_scores
from ..models import (
    Chunk,
    DisabilityDimension,
    Embedding,
    RetrievalHit,
    VrCategory,
    dimension_rank,
)

CATEGORY_CODES = {cat: i for i, cat in enumerate(VrCategory)}


def _dim_bits(dims) -> int:
    bits = 0
    for d in dims:
        bits |= 1 << dimension_rank(d)
    return bits


@dataclass
class SearchFilter:
    category: VrCategory | None = None
    dimensions: set[DisabilityDimension] | None = None
    exclude_app: str | set[str] | None = None

    def excluded_apps(self) -> set[str]:
        if self.exclude_app is None:
            return set()
        if isinstance(self.exclude_app, str):
            return {self.exclude_app}
        return set(self.exclude_app)


class _Snapshot:
    """Immutable view of the index used by searches."""

    def __init__(self, entries: dict[str, tuple[np.ndarray, Chunk]], dim: int):
        self.ids = list(entries.keys())
        self.chunks = [entries[i][1] for i in self.ids]
        n = len(self.ids)
        self.matrix = np.zeros((n, dim), dtype=np.float64)
        self.cat_codes = np.zeros(n, dtype=np.int8)
        self.dim_bits = np.zeros(n, dtype=np.uint8)
        self.app_ids = np.array([c.app_id for c in self.chunks], dtype=object)
        for i, cid in enumerate(self.ids):
            vec, chunk = entries[cid]
            self.matrix[i] = vec
            self.cat_codes[i] = CATEGORY_CODES[chunk.category]
            self.dim_bits[i] = _dim_bits(chunk.dimensions)


class VectorIndex:
    """Many concurrent readers, one writer; each search sees one snapshot."""

    def __init__(self, dim: int, provider_id: str):
        self.dim = dim
        self.provider_id = provider_id
        self._entries: dict[str, tuple[np.ndarray, Chunk]] = {}
        # (entries dict identity, snapshot built from it); validated on read so
        # a racing rebuild can never pin a stale snapshot after an upsert.
        self._snapshot_cache: tuple[dict, _Snapshot] | None = None
        self._write_lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._entries)

    # --- mutation -----------------------------------------------------------

    def upsert(self, items: list[tuple[Chunk, Embedding]]) -> None:
        """Insert or replace entries; vectors are re-normalized on insert."""
        with self._write_lock:
            entries = dict(self._entries)
            for chunk, emb in items:
                vec = np.asarray(emb.vector, dtype=np.float64)
                if vec.shape != (self.dim,):
                    raise DimensionMismatch(
                        f"vector for {chunk.chunk_id} has shape {vec.shape}, index dim {self.dim}"
                    )
                norm = float(np.linalg.norm(vec))
                if norm == 0.0:
                    raise DimensionMismatch(f"zero vector for {chunk.chunk_id}")
                entries[chunk.chunk_id] = (vec / norm, chunk)
            self._entries = entries
            self._snapshot_cache = None

    # --- search ---------------------------------------------------------------

    def _snapshot(self) -> _Snapshot:
        entries = self._entries
        cached = self._snapshot_cache
        if cached is not None and cached[0] is entries:
            return cached[1]
        snap = _Snapshot(entries, self.dim)
        self._snapshot_cache = (entries, snap)
        return snap

    def search(self, query: Embedding, flt: SearchFilter | None = None, k: int = 8
               ) -> list[RetrievalHit]:
        """Top-k by cosine, ranked (rounded score desc, chunk_id asc)."""
        if k < 1:
            raise ValueError(f"k must be >= 1, got {k}")
        qvec = np.asarray(query.vector, dtype=np.float64)
        if qvec.shape != (self.dim,):
            raise DimensionMismatch(
                f"query has shape {qvec.shape}, index dim {self.dim}"
            )
        flt = flt or SearchFilter()
        snap = self._snapshot()
        n = len(snap.ids)
        if n == 0:
            return []
        mask = np.ones(n, dtype=bool)
        if flt.category is not None:
            mask &= snap.cat_codes == CATEGORY_CODES[flt.category]
        if flt.dimensions:
            want = np.uint8(_dim_bits(flt.dimensions))
            mask &= (snap.dim_bits & want) != 0
        excluded = flt.excluded_apps()
        if excluded:
            mask &= ~np.isin(snap.app_ids, list(excluded))
        if not mask.any():
            return []
        scores = masked_scores(snap.matrix, qvec, mask)
        candidates = np.nonzero(mask)[0]
        ranked = sorted(candidates, key=lambda i: (-round(float(scores[i]), 12), snap.ids[i]))
        return [
            RetrievalHit(chunk=snap.chunks[i], score=float(scores[i]))
            for i in ranked[:k]
        ]

    def get_chunk(self, chunk_id: str) -> Chunk | None:
        entry = self._entries.get(chunk_id)
        return entry[1] if entry else None

    def chunk_ids(self) -> list[str]:
        return list(self._entries.keys())

    # --- persistence ------------------------------------------------------------

    def save(self, directory: str | Path) -> None:
        """Write manifest.json + entries.jsonl via temp files and atomic rename."""
        directory = Path(directory)
        try:
            directory.mkdir(parents=True, exist_ok=True)
            entries_tmp = directory / "entries.jsonl.tmp"
            manifest_tmp = directory / "manifest.json.tmp"
            with open(entries_tmp, "w", encoding="utf-8") as fh:
                for cid, (vec, chunk) in self._entries.items():
                    record = {"chunk_id": cid, "vector": vec.tolist(), **chunk.to_dict()}
                    fh.write(json.dumps(record, ensure_ascii=False) + "\n")
            manifest = {
                "dim": self.dim,
                "provider_id": self.provider_id,
                "count": len(self._entries),
            }
            with open(manifest_tmp, "w", encoding="utf-8") as fh:
                fh.write(json.dumps(manifest, ensure_ascii=False, indent=2) + "\n")
            os.replace(entries_tmp, directory / "entries.jsonl")
            os.replace(manifest_tmp, directory / "manifest.json")
        except OSError as exc:
            raise PersistenceError(f"failed to persist index to {directory}: {exc}") from exc

    @classmethod
    def load(cls, directory: str | Path) -> "VectorIndex":
        directory = Path(directory)
        manifest_path = directory / "manifest.json"
        entries_path = directory / "entries.jsonl"
        try:
            manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
            index = cls(dim=int(manifest["dim"]), provider_id=manifest["provider_id"])
            with open(entries_path, encoding="utf-8") as fh:
                for line in fh:
                    if not line.strip():
                        continue
                    record = json.loads(line)
                    vec = np.asarray(record.pop("vector"), dtype=np.float64)
                    cid = record["chunk_id"]
                    chunk = Chunk.from_dict(record)
                    if vec.shape != (index.dim,):
                        raise PersistenceError(
                            f"entry {cid} has dim {vec.shape}, manifest says {index.dim}"
                        )
                    index._entries[cid] = (vec, chunk)
        except OSError as exc:
            raise PersistenceError(f"failed to load index from {directory}: {exc}") from exc
        except (KeyError, ValueError, json.JSONDecodeError) as exc:
            raise PersistenceError(f"corrupt index at {directory}: {exc}") from exc
        if len(index._entries) != int(manifest["count"]):
            raise PersistenceError(
                f"manifest count {manifest['count']} != {len(index._entries)} entries"
            )
        return index

"""JSONL corpus readers/writers (raw and curated reviews)."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable

from .models import CuratedReview, RawReview


def _write_jsonl(path: str | Path, dicts: Iterable[dict], append: bool = False) -> int:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    mode = "a" if append else "w"
    count = 0
    with open(path, mode, encoding="utf-8") as fh:
        for d in dicts:
            fh.write(json.dumps(d, ensure_ascii=False) + "\n")
            count += 1
    return count


def write_raw_corpus(path: str | Path, reviews: Iterable[RawReview], append: bool = False) -> int:
    return _write_jsonl(path, (r.to_dict() for r in reviews), append=append)


def read_raw_corpus(path: str | Path) -> list[RawReview]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                out.append(RawReview.from_dict(json.loads(line)))
    return out


def write_curated_corpus(path: str | Path, reviews: Iterable[CuratedReview]) -> int:
    return _write_jsonl(path, (r.to_dict() for r in reviews))


def read_curated_corpus(path: str | Path) -> list[CuratedReview]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                out.append(CuratedReview.from_dict(json.loads(line)))
    return out

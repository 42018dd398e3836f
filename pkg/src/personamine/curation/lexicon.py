"""Disability keyword lexicon with per-token fuzz budgets."""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from ..kernels import encode_tokens
from ..models import DisabilityDimension


def fuzz_budget(token: str) -> int:
    """Edit budget per phrase token: exact under 5 letters, then 1, then 2."""
    n = len(token)
    if n <= 4:
        return 0
    if n <= 8:
        return 1
    return 2


@dataclass
class _CompiledPhrase:
    tokens: list[str]
    enc: np.ndarray  # (m, width) int32
    lens: np.ndarray  # (m,) int32
    budgets: np.ndarray  # (m,) int32
    width: int


@dataclass
class KeywordLexicon:
    """Phrases per dimension; each phrase is 1-4 lowercase tokens."""

    entries: dict[DisabilityDimension, list[str]]
    _compiled: dict[DisabilityDimension, list[_CompiledPhrase]] = field(
        default_factory=dict, repr=False
    )

    def __post_init__(self):
        seen: dict[str, DisabilityDimension] = {}
        for dim, phrases in self.entries.items():
            if not phrases:
                raise ValueError(f"dimension {dim.value} has no phrases")
            for phrase in phrases:
                if phrase != phrase.lower():
                    raise ValueError(f"phrase {phrase!r} is not lowercase")
                ntok = len(phrase.split())
                if not 1 <= ntok <= 4:
                    raise ValueError(f"phrase {phrase!r} must be 1-4 tokens")
                if phrase in seen and seen[phrase] != dim:
                    raise ValueError(
                        f"phrase {phrase!r} appears under both {seen[phrase].value} and {dim.value}"
                    )
                seen[phrase] = dim
        for dim in DisabilityDimension:
            if dim not in self.entries or not self.entries[dim]:
                raise ValueError(f"dimension {dim.value} missing from lexicon")

    def compiled(self, dim: DisabilityDimension) -> list[_CompiledPhrase]:
        if dim not in self._compiled:
            out = []
            for phrase in self.entries[dim]:
                tokens = phrase.split()
                enc, lens = encode_tokens(tokens)
                budgets = np.array([fuzz_budget(t) for t in tokens], dtype=np.int32)
                out.append(
                    _CompiledPhrase(
                        tokens=tokens, enc=enc, lens=lens, budgets=budgets, width=enc.shape[1]
                    )
                )
            self._compiled[dim] = out
        return self._compiled[dim]

    @classmethod
    def from_toml(cls, path: str | Path) -> "KeywordLexicon":
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
        entries = {
            DisabilityDimension(name): list(section["phrases"])
            for name, section in data.items()
        }
        return cls(entries=entries)


def default_lexicon_path() -> Path:
    return Path(__file__).resolve().parent.parent / "conf" / "lexicon.toml"


def load_default_lexicon() -> KeywordLexicon:
    return KeywordLexicon.from_toml(default_lexicon_path())

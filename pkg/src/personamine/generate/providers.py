"""LLM and photo provider abstraction: deterministic mock, record/replay, remote.

The mock provider is a pure function of the prompt bytes: it parses the
evidence lines back out of the prompt and synthesizes schema-valid output,
quoting only verbatim evidence substrings. That keeps the whole generation
path testable offline with zero recorded fixtures.
"""

from __future__ import annotations

import hashlib
import json
import os
import re
import threading
from pathlib import Path
from typing import Protocol

import requests

from ..errors import ProviderUnavailable

DEFAULT_MAX_IN_FLIGHT = 2  # concurrent calls allowed per remote provider


class LlmProvider(Protocol):
    provider_id: str

    def generate(self, prompt: str, schema_hint: str = "") -> str: ...


_EVIDENCE_LINE = re.compile(r"^\[([^\]\s]+)\] (.+)$", re.MULTILINE)
_FIELD_LINE = re.compile(r"^([A-Z_]+): (.*)$", re.MULTILINE)

_NAMES = [
    "Amara Okafor", "Jonas Weber", "Priya Raman", "Mateo Alvarez",
    "Keiko Tanaka", "Liam O'Donnell", "Sofia Petrova", "Omar Haddad",
    "Ingrid Larsen", "Tomas Novak", "Aisha Bello", "Daniel Kim",
]

_REQUIREMENT_DEFAULTS = {
    "vestibular": [
        "Provide comfort locomotion options (teleport movement, vignette)",
        "Let players disable camera shake and smooth turning",
    ],
    "hearing": [
        "Provide full subtitles and closed captions with size options",
        "Add visual indicators for directional sound cues",
    ],
    "vision": [
        "Offer interface scaling and high-contrast presets",
        "Use colorblind-safe palettes for critical markers",
    ],
    "motor": [
        "Support one-handed control remapping and toggle grips",
        "Add a seated mode with height calibration",
    ],
    "cognitive": [
        "Allow self-paced tutorials with persistent instructions",
        "Provide a reduced-stimulation calm mode",
    ],
    "speech": [
        "Offer non-voice alternatives for every voice command",
        "Add text chat and quick phrase wheels",
    ],
}

_AGE_RE = re.compile(r"\b(\d{2})\s+years?\s+old\b|\bi am (\d{2})\b", re.IGNORECASE)
_OCCUPATION_RE = re.compile(
    r"\bwork(?:s|ing)? as an? ([a-z]+)\b|\b(student|teacher|nurse|developer|designer)\b",
    re.IGNORECASE,
)


def _prompt_fields(prompt: str) -> dict[str, str]:
    return {m.group(1): m.group(2) for m in _FIELD_LINE.finditer(prompt)}


def _evidence_pairs(prompt: str) -> list[tuple[str, str]]:
    return [(m.group(1), m.group(2)) for m in _EVIDENCE_LINE.finditer(prompt)]


def _first_clause(text: str, max_words: int = 18) -> str:
    clause = re.split(r"[.,;!?]", text, maxsplit=1)[0]
    words = clause.split()
    return " ".join(words[:max_words])


class MockLlmProvider:
    """Deterministic offline provider; output depends only on the prompt."""

    provider_id = "mock"

    def generate(self, prompt: str, schema_hint: str = "") -> str:
        fields = _prompt_fields(prompt)
        task = fields.get("TASK", "")
        if task == "extract":
            return self._extract(prompt, fields)
        if task == "persona":
            return self._persona(prompt, fields)
        raise ProviderUnavailable(f"mock provider got an unrecognized task {task!r}")

    def _extract(self, prompt: str, fields: dict[str, str]) -> str:
        dimension = fields.get("DIMENSION", "unknown")
        category = fields.get("CATEGORY", "unknown")
        evidence = _evidence_pairs(prompt)
        texts = [t for _, t in evidence]
        joined = " ".join(texts).lower()

        pain_points = []
        for t in texts:
            clause = _first_clause(t)
            if clause and clause not in pain_points:
                pain_points.append(clause)
            if len(pain_points) == 2:
                break
        if not pain_points:
            pain_points = [f"barriers reported in {category} reviews"]
        requirements = list(_REQUIREMENT_DEFAULTS.get(dimension, ["Review accessibility options"]))

        age = "unspecified"
        m = _AGE_RE.search(joined)
        if m:
            age = m.group(1) or m.group(2)
        occupation = "unspecified"
        m = _OCCUPATION_RE.search(joined)
        if m:
            occupation = (m.group(1) or m.group(2)).lower()
        vr_experience = "unspecified"
        if "first session" in joined or "first time" in joined:
            vr_experience = "new to VR"
        elif "weekend" in joined or "every week" in joined or "short bursts" in joined:
            vr_experience = "regular player"

        summary = (
            f"Players of {category} VR apps report {dimension} barriers: "
            f"{pain_points[0]}."
        )
        return json.dumps(
            {
                "summary": summary,
                "requirements": requirements,
                "pain_points": pain_points,
                "demographics": {
                    "age": age,
                    "occupation": occupation,
                    "vr_experience": vr_experience,
                },
            },
            ensure_ascii=False,
        )

    def _persona(self, prompt: str, fields: dict[str, str]) -> str:
        evidence = _evidence_pairs(prompt)
        digest = hashlib.sha256(prompt.encode("utf-8")).digest()
        name = _NAMES[digest[0] % len(_NAMES)]
        summary = fields.get("SUMMARY", "")
        dimension = fields.get("DIMENSION", "accessibility")
        category = fields.get("CATEGORY", "VR")
        quotes = []
        for chunk_id, text in evidence[:3]:
            words = text.split()
            quotes.append({"text": " ".join(words[:12]), "source_chunk_id": chunk_id})
        biography = (
            f"{name} plays {category} VR experiences and navigates {dimension} "
            f"barriers every session. {summary}"
        )
        return json.dumps(
            {"display_name": name, "biography": biography, "quotes": quotes},
            ensure_ascii=False,
        )


class ReplayLlmProvider:
    """Serves recorded outputs keyed by prompt hash; no network."""

    provider_id = "replay"

    def __init__(self, fixture_dir: str | Path):
        self.fixture_dir = Path(fixture_dir)

    def generate(self, prompt: str, schema_hint: str = "") -> str:
        key = hashlib.sha256(prompt.encode("utf-8")).hexdigest()
        path = self.fixture_dir / f"{key}.json"
        if not path.exists():
            raise ProviderUnavailable(f"no recorded output for prompt hash {key[:12]}…")
        return json.loads(path.read_text(encoding="utf-8"))["output"]


class RecordingLlmProvider:
    """Wraps another provider and records outputs for later replay."""

    def __init__(self, inner: LlmProvider, fixture_dir: str | Path):
        self.inner = inner
        self.fixture_dir = Path(fixture_dir)
        self.provider_id = inner.provider_id

    def generate(self, prompt: str, schema_hint: str = "") -> str:
        output = self.inner.generate(prompt, schema_hint)
        self.fixture_dir.mkdir(parents=True, exist_ok=True)
        key = hashlib.sha256(prompt.encode("utf-8")).hexdigest()
        (self.fixture_dir / f"{key}.json").write_text(
            json.dumps({"prompt_sha256": key, "output": output}, ensure_ascii=False, indent=2)
            + "\n",
            encoding="utf-8",
        )
        return output


ENV_LLM_URL = "PERSONAMINE_LLM_URL"
ENV_LLM_KEY = "PERSONAMINE_LLM_KEY"
ENV_LLM_MODEL = "PERSONAMINE_LLM_MODEL"


class RemoteLlmProvider:
    """Chat-completions-style JSON endpoint; base URL, key and model via env."""

    def __init__(self, base_url: str | None = None, api_key: str | None = None,
                 model: str | None = None, timeout: float = 120.0,
                 max_in_flight: int = DEFAULT_MAX_IN_FLIGHT):
        self.base_url = (base_url or os.environ.get(ENV_LLM_URL, "")).rstrip("/")
        self._api_key = api_key or os.environ.get(ENV_LLM_KEY, "")
        self.model = model or os.environ.get(ENV_LLM_MODEL, "gpt-4o")
        self.timeout = timeout
        self.provider_id = f"remote:{self.model}"
        self._gate = threading.Semaphore(max_in_flight)
        if not self.base_url:
            raise ProviderUnavailable(f"LLM endpoint not configured (set {ENV_LLM_URL})")

    def generate(self, prompt: str, schema_hint: str = "") -> str:
        headers = {"content-type": "application/json"}
        if self._api_key:
            headers["authorization"] = f"Bearer {self._api_key}"
        body = {
            "model": self.model,
            "messages": [{"role": "user", "content": prompt}],
            "temperature": 0,
        }
        with self._gate:
            try:
                resp = requests.post(
                    f"{self.base_url}/chat/completions", json=body, headers=headers,
                    timeout=self.timeout,
                )
                resp.raise_for_status()
                return resp.json()["choices"][0]["message"]["content"]
            except (requests.RequestException, KeyError, IndexError, ValueError) as exc:
                raise ProviderUnavailable(f"LLM endpoint failed: {type(exc).__name__}") from exc


class PhotoProvider(Protocol):
    provider_id: str

    def render(self, seed: str, description: str) -> str: ...


class StubPhotoProvider:
    """Deterministic stand-in for a generative photo service."""

    provider_id = "photo-stub"

    def render(self, seed: str, description: str) -> str:
        digest = hashlib.sha256(f"{seed}|{description}".encode("utf-8")).hexdigest()[:16]
        return f"stub://photo/{digest}"


def placeholder_photo(dimension_value: str) -> str:
    return f"placeholder://persona/{dimension_value}.svg"


def get_llm_provider(name: str, replay_dir: str | Path | None = None,
                     record_dir: str | Path | None = None) -> LlmProvider:
    if name == "mock":
        provider: LlmProvider = MockLlmProvider()
    elif name == "replay":
        if replay_dir is None:
            raise ValueError("replay provider needs a fixture directory")
        provider = ReplayLlmProvider(replay_dir)
    elif name == "remote":
        provider = RemoteLlmProvider()
    else:
        raise ValueError(f"unknown llm provider {name!r} (expected mock|replay|remote)")
    if record_dir is not None:
        provider = RecordingLlmProvider(provider, record_dir)
    return provider

"""HTTP transport with per-host rate limiting and record/replay fixtures.

Every fetch is an Envelope (url, status, fetched_at, body). Recording writes
envelopes into a fixture directory keyed by a hash of the request line, so the
whole pipeline can run offline via ReplayTransport.
"""

from __future__ import annotations

import hashlib
import json
import threading
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Protocol
from urllib.parse import urlsplit

import requests

from ..errors import RateLimited, TransportError
from ..util import to_rfc3339, utcnow


def fixture_key(url: str) -> str:
    return hashlib.sha1(f"GET {url}".encode("utf-8")).hexdigest()[:24]


@dataclass
class Envelope:
    url: str
    status: int
    fetched_at: str  # RFC 3339
    body: str

    def to_dict(self) -> dict:
        return {
            "url": self.url,
            "status": self.status,
            "fetched_at": self.fetched_at,
            "body": self.body,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Envelope":
        return cls(url=d["url"], status=int(d["status"]), fetched_at=d["fetched_at"],
                   body=d["body"])


class Transport(Protocol):
    def get(self, url: str) -> Envelope: ...


class TokenBucket:
    """One request per interval per host; thread-safe."""

    def __init__(self, rate_per_second: float = 1.0, clock=time.monotonic, sleep=time.sleep):
        self.interval = 1.0 / rate_per_second
        self._clock = clock
        self._sleep = sleep
        self._next_ok: dict[str, float] = {}
        self._lock = threading.Lock()

    def acquire(self, host: str) -> None:
        with self._lock:
            now = self._clock()
            ready = self._next_ok.get(host, now)
            wait = max(0.0, ready - now)
            self._next_ok[host] = max(ready, now) + self.interval
        if wait > 0:
            self._sleep(wait)


class HttpTransport:
    """Live fetches with polite rate limiting, backoff, and optional recording."""

    def __init__(self, rate_per_second: float = 1.0, max_retries: int = 3,
                 timeout: float = 30.0, record_dir: str | Path | None = None,
                 session: requests.Session | None = None, sleep=time.sleep):
        self._bucket = TokenBucket(rate_per_second=rate_per_second, sleep=sleep)
        self.max_retries = max_retries
        self.timeout = timeout
        self.record_dir = Path(record_dir) if record_dir else None
        self._session = session or requests.Session()
        self._sleep = sleep

    def get(self, url: str) -> Envelope:
        host = urlsplit(url).netloc
        backoff = 1.0
        last: Exception | None = None
        for _ in range(self.max_retries + 1):
            self._bucket.acquire(host)
            try:
                resp = self._session.get(url, timeout=self.timeout)
            except requests.RequestException as exc:
                raise TransportError(f"GET {url} failed: {type(exc).__name__}") from exc
            if resp.status_code == 429:
                retry_after = float(resp.headers.get("retry-after", backoff))
                last = RateLimited(f"rate limited on {host}", retry_after=retry_after)
                self._sleep(retry_after)
                backoff *= 2
                continue
            if resp.status_code >= 400:
                raise TransportError(f"GET {url} returned HTTP {resp.status_code}")
            envelope = Envelope(
                url=url,
                status=resp.status_code,
                fetched_at=to_rfc3339(utcnow()),
                body=resp.text,
            )
            if self.record_dir is not None:
                self._record(envelope)
            return envelope
        raise last or TransportError(f"GET {url}: retries exhausted")

    def _record(self, envelope: Envelope) -> None:
        self.record_dir.mkdir(parents=True, exist_ok=True)
        path = self.record_dir / f"{fixture_key(envelope.url)}.json"
        path.write_text(
            json.dumps(envelope.to_dict(), ensure_ascii=False, indent=2) + "\n",
            encoding="utf-8",
        )
        manifest = self.record_dir / "manifest.txt"
        with open(manifest, "a", encoding="utf-8") as fh:
            fh.write(f"{fixture_key(envelope.url)} {envelope.url}\n")


class ReplayTransport:
    """Serves recorded envelopes from a fixture directory; no network."""

    def __init__(self, fixture_dir: str | Path):
        self.fixture_dir = Path(fixture_dir)

    def get(self, url: str) -> Envelope:
        path = self.fixture_dir / f"{fixture_key(url)}.json"
        if not path.exists():
            raise TransportError(f"no recorded fixture for GET {url} (expected {path.name})")
        return Envelope.from_dict(json.loads(path.read_text(encoding="utf-8")))

"""App catalog handling and top-N selection by popularity rank."""

from __future__ import annotations

import json
from pathlib import Path

from ..models import AppDescriptor


def select_top_apps(catalog: list[AppDescriptor], n: int) -> list[AppDescriptor]:
    """The n smallest popularity_rank entries; ties by (store, app_id) ascending."""
    if not catalog:
        raise ValueError("catalog is empty")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    ranked = sorted(catalog, key=lambda a: (a.popularity_rank, a.store.value, a.app_id))
    return ranked[:n]


def load_catalog(path: str | Path) -> list[AppDescriptor]:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    apps = [AppDescriptor.from_dict(d) for d in data]
    seen = set()
    for app in apps:
        if app.key in seen:
            raise ValueError(f"duplicate app {app.key} in catalog {path}")
        seen.add(app.key)
    return apps

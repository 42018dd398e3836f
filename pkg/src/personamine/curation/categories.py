"""Primary VR category assignment from app tags plus a manual override table."""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from ..errors import UncategorizedApp
from ..models import AppDescriptor, VrCategory


@dataclass
class CategoryMapping:
    """Ordered tag rules (first match wins) and per-app overrides."""

    rules: list[tuple[str, VrCategory]]
    overrides: dict[tuple[str, str], VrCategory] = field(default_factory=dict)

    @classmethod
    def from_toml(cls, path: str | Path) -> "CategoryMapping":
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
        rules = [
            (rule["tag"].lower(), VrCategory(rule["category"]))
            for rule in data.get("rules", [])
        ]
        overrides = {}
        for key, cat in data.get("overrides", {}).items():
            store, _, app_id = key.partition("/")
            overrides[(store, app_id)] = VrCategory(cat)
        return cls(rules=rules, overrides=overrides)


def assign_category(app: AppDescriptor, mapping: CategoryMapping) -> VrCategory:
    """Override table wins; otherwise the first rule whose tag the app carries."""
    override = mapping.overrides.get(app.key)
    if override is not None:
        return override
    tags = {t.lower() for t in app.raw_tags}
    for tag, category in mapping.rules:
        if tag in tags:
            return category
    raise UncategorizedApp(app.store.value, app.app_id)


def default_categories_path() -> Path:
    return Path(__file__).resolve().parent.parent / "conf" / "categories.toml"


def load_default_mapping() -> CategoryMapping:
    return CategoryMapping.from_toml(default_categories_path())

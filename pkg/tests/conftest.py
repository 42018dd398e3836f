import sys
from datetime import datetime, timezone
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from personamine.curation.categories import load_default_mapping
from personamine.curation.lexicon import load_default_lexicon
from personamine.curation.pipeline import DenyLists
from personamine.models import AppDescriptor, RawReview, StoreId


CONF_DIR = Path(__file__).resolve().parent.parent / "src" / "personamine" / "conf"
FIXTURE_DIR = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="session")
def lexicon():
    return load_default_lexicon()


@pytest.fixture(scope="session")
def category_mapping():
    return load_default_mapping()


@pytest.fixture(scope="session")
def deny_lists():
    return DenyLists.from_dir(CONF_DIR / "deny")


def make_app(store="steam", app_id="app-1", tags=("action",), rank=1, title="Blade Arena"):
    return AppDescriptor(
        store=StoreId(store),
        app_id=app_id,
        title=title,
        official_description="A VR title.",
        raw_tags=list(tags),
        popularity_rank=rank,
    )


def make_raw(body, review_id="r-1", app=None, posted="2024-05-01T10:00:00Z"):
    from personamine.util import parse_rfc3339

    posted_dt = parse_rfc3339(posted)
    return RawReview(
        review_id=review_id,
        app=app or make_app(),
        body=body,
        rating=1.0,
        posted_at=posted_dt,
        fetched_at=datetime(2024, 6, 1, tzinfo=timezone.utc),
    )

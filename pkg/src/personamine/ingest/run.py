"""Orchestration for one ingest run: catalog -> fetch -> raw corpus records."""

from __future__ import annotations

import concurrent.futures

from ..models import AppDescriptor, RawReview, StoreId
from ..util import parse_rfc3339
from .catalog import select_top_apps
from .scraper import SelectorProfile, scrape_store_reviews, store_page_url
from .steam import fetch_steam_reviews
from .transport import Transport


def fetch_app_reviews(
    app: AppDescriptor,
    transport: Transport,
    profile: SelectorProfile | None = None,
    page_limit: int = 10,
) -> list[RawReview]:
    if app.store is StoreId.STEAM:
        return fetch_steam_reviews(app, page_limit=page_limit, transport=transport)
    if profile is None:
        raise ValueError("a selector profile is required for scraped stores")
    envelope = transport.get(store_page_url(app.app_id))
    return scrape_store_reviews(
        envelope.body,
        store=StoreId.METAQUEST,
        app=app,
        profile=profile,
        fetched_at=parse_rfc3339(envelope.fetched_at),
    )


def run_ingest(
    catalog: list[AppDescriptor],
    store: StoreId,
    top: int,
    transport: Transport,
    profile: SelectorProfile | None = None,
    page_limit: int = 10,
    max_workers: int = 4,
) -> list[RawReview]:
    """Fetch reviews for the top-N apps of one store, apps in rank order.

    Distinct apps fetch concurrently (the transport's per-host bucket
    serializes same-store requests); output is re-sequenced to rank order.
    """
    store_apps = [a for a in catalog if a.store is store]
    if not store_apps:
        return []
    apps = select_top_apps(store_apps, top)
    results: dict[str, list[RawReview]] = {}
    with concurrent.futures.ThreadPoolExecutor(max_workers=max_workers) as pool:
        futures = {
            pool.submit(fetch_app_reviews, app, transport, profile, page_limit): app
            for app in apps
        }
        for fut in concurrent.futures.as_completed(futures):
            app = futures[fut]
            results[app.app_id] = fut.result()
    out: list[RawReview] = []
    for app in apps:
        out.extend(results[app.app_id])
    return out

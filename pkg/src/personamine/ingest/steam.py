"""Steam public review API client (JSON, cursor-paginated)."""

from __future__ import annotations

import json
from datetime import datetime, timezone
from urllib.parse import quote

from ..errors import MalformedPayload
from ..models import AppDescriptor, RawReview, StoreId
from ..util import parse_rfc3339
from .transport import Transport

REVIEWS_URL = (
    "https://store.steampowered.com/appreviews/{app_id}"
    "?json=1&filter=recent&language=all&purchase_type=all&num_per_page={per_page}&cursor={cursor}"
)


def reviews_page_url(app_id: str, cursor: str = "*", per_page: int = 100) -> str:
    return REVIEWS_URL.format(app_id=app_id, per_page=per_page, cursor=quote(cursor, safe=""))


def fetch_steam_reviews(
    app: AppDescriptor,
    page_limit: int,
    transport: Transport,
    per_page: int = 100,
) -> list[RawReview]:
    """Follow the cursor until exhausted or page_limit pages; newest first.

    Results are deduplicated by review_id; re-fetching the same pages yields
    the identical id set.
    """
    if app.store is not StoreId.STEAM:
        raise ValueError(f"app {app.app_id} is not a Steam app")
    if page_limit < 1:
        raise ValueError(f"page_limit must be >= 1, got {page_limit}")

    by_id: dict[str, RawReview] = {}
    cursor = "*"
    seen_cursors = {cursor}
    for _ in range(page_limit):
        envelope = transport.get(reviews_page_url(app.app_id, cursor, per_page))
        payload = _parse_payload(envelope.body, envelope.url)
        fetched_at = parse_rfc3339(envelope.fetched_at)
        reviews = payload.get("reviews", [])
        for item in reviews:
            review = _to_raw_review(item, app, fetched_at, envelope.url)
            by_id.setdefault(review.review_id, review)
        if not reviews:
            break
        cursor = payload.get("cursor", "")
        if not cursor or cursor in seen_cursors:
            break
        seen_cursors.add(cursor)

    out = list(by_id.values())
    out.sort(key=lambda r: (-r.posted_at.timestamp(), r.review_id))
    return out


def _parse_payload(body: str, url: str) -> dict:
    try:
        payload = json.loads(body)
    except json.JSONDecodeError as exc:
        raise MalformedPayload(f"invalid JSON from {url}: {exc.msg}", offset=exc.pos) from exc
    if not isinstance(payload, dict) or payload.get("success") != 1:
        raise MalformedPayload(f"review API reported failure for {url}")
    return payload


def _to_raw_review(item: dict, app: AppDescriptor, fetched_at: datetime, url: str) -> RawReview:
    try:
        rec_id = str(item["recommendationid"])
        body = item["review"]
        posted_at = datetime.fromtimestamp(int(item["timestamp_created"]), tz=timezone.utc)
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedPayload(f"review record missing fields in {url}: {exc}") from exc
    rating = None
    if "voted_up" in item:
        rating = 1.0 if item["voted_up"] else 0.0
    return RawReview(
        review_id=f"steam-{app.app_id}-{rec_id}",
        app=app,
        body=body,
        rating=rating,
        posted_at=posted_at,
        fetched_at=fetched_at,
    )

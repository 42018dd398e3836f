"""Store-page scraper driven by a versioned selector profile.

The selector grammar is deliberately small: `tag`, `.class`, `tag.class`,
each optionally followed by `@attr` to read an attribute instead of text.
A bare `@attr` reads the attribute off the review block itself.
"""

from __future__ import annotations

import hashlib
import sys
from dataclasses import dataclass
from datetime import datetime
from html.parser import HTMLParser
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from ..errors import MalformedPayload, SelectorProfileMismatch
from ..models import AppDescriptor, RawReview, StoreId
from ..util import parse_rfc3339

_VOID_TAGS = {"br", "hr", "img", "input", "meta", "link", "source", "wbr"}


class _Node:
    __slots__ = ("tag", "attrs", "children", "text_parts")

    def __init__(self, tag: str, attrs: dict[str, str]):
        self.tag = tag
        self.attrs = attrs
        self.children: list[_Node] = []
        self.text_parts: list[str] = []

    def text(self) -> str:
        parts = list(self.text_parts)
        for child in self.children:
            parts.append(child.text())
        return "".join(parts)

    def classes(self) -> set[str]:
        return set(self.attrs.get("class", "").split())


class _TreeBuilder(HTMLParser):
    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.root = _Node("#root", {})
        self._stack = [self.root]

    def handle_starttag(self, tag, attrs):
        node = _Node(tag, dict(attrs))
        self._stack[-1].children.append(node)
        if tag not in _VOID_TAGS:
            self._stack.append(node)

    def handle_startendtag(self, tag, attrs):
        self._stack[-1].children.append(_Node(tag, dict(attrs)))

    def handle_endtag(self, tag):
        for i in range(len(self._stack) - 1, 0, -1):
            if self._stack[i].tag == tag:
                del self._stack[i:]
                return

    def handle_data(self, data):
        self._stack[-1].text_parts.append(data)


def parse_html(text: str) -> _Node:
    builder = _TreeBuilder()
    try:
        builder.feed(text)
        builder.close()
    except Exception as exc:  # html.parser raises rarely, but don't mask it
        raise MalformedPayload(f"unparseable HTML: {exc}") from exc
    return builder.root


def _split_selector(selector: str) -> tuple[str | None, str | None, str | None]:
    """-> (tag, class, attr)"""
    sel, _, attr = selector.partition("@")
    sel = sel.strip()
    attr = attr.strip() or None
    if not sel:
        return None, None, attr
    if "." in sel:
        tag, _, cls = sel.partition(".")
        return (tag or None), (cls or None), attr
    return sel, None, attr


def select_nodes(root: _Node, selector: str) -> list[_Node]:
    tag, cls, _ = _split_selector(selector)
    out: list[_Node] = []

    def walk(node: _Node):
        for child in node.children:
            if (tag is None or child.tag == tag) and (cls is None or cls in child.classes()):
                out.append(child)
            walk(child)

    walk(root)
    return out


def _extract(block: _Node, selector: str) -> str | None:
    tag, cls, attr = _split_selector(selector)
    if tag is None and cls is None:
        value = block.attrs.get(attr or "")
        return value
    nodes = select_nodes(block, selector)
    if not nodes:
        return None
    if attr:
        return nodes[0].attrs.get(attr)
    return nodes[0].text().strip()


@dataclass
class SelectorProfile:
    name: str
    container: str
    review_block: str
    body: str
    posted_at: str
    review_id: str | None = None
    rating: str | None = None

    @classmethod
    def from_toml(cls, path: str | Path) -> "SelectorProfile":
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
        sel = data["selectors"]
        return cls(
            name=data["profile"]["name"],
            container=sel["container"],
            review_block=sel["review_block"],
            body=sel["body"],
            posted_at=sel["posted_at"],
            review_id=sel.get("review_id"),
            rating=sel.get("rating"),
        )


def scrape_store_reviews(
    app_page: str,
    store: StoreId,
    app: AppDescriptor,
    profile: SelectorProfile,
    fetched_at: datetime,
) -> list[RawReview]:
    """Extract reviews from a fetched page. Optional fields (rating) that are
    absent stay absent; structural selectors that fail name themselves."""
    if store is not StoreId.METAQUEST:
        raise ValueError(f"scraper only handles the {StoreId.METAQUEST.value} store")
    root = parse_html(app_page)
    containers = select_nodes(root, profile.container)
    if not containers:
        raise SelectorProfileMismatch("container", profile.container)
    blocks = select_nodes(containers[0], profile.review_block)
    reviews = []
    for block in blocks:
        body = _extract(block, profile.body)
        if body is None or not body.strip():
            raise SelectorProfileMismatch("body", profile.body)
        posted_raw = _extract(block, profile.posted_at)
        if not posted_raw:
            raise SelectorProfileMismatch("posted_at", profile.posted_at)
        try:
            posted_at = parse_rfc3339(posted_raw)
        except ValueError as exc:
            raise MalformedPayload(f"bad timestamp {posted_raw!r}: {exc}") from exc
        rating = None
        if profile.rating:
            rating_raw = _extract(block, profile.rating)
            if rating_raw is not None:
                try:
                    rating = float(rating_raw)
                except ValueError as exc:
                    raise MalformedPayload(f"bad rating {rating_raw!r}") from exc
        review_id = None
        if profile.review_id:
            review_id = _extract(block, profile.review_id)
        if not review_id:
            digest = hashlib.sha1(
                f"{store.value}|{app.app_id}|{posted_raw}|{body}".encode("utf-8")
            ).hexdigest()[:16]
            review_id = f"mq-{app.app_id}-{digest}"
        reviews.append(
            RawReview(
                review_id=review_id,
                app=app,
                body=body,
                rating=rating,
                posted_at=posted_at,
                fetched_at=fetched_at,
            )
        )
    return reviews


def default_profile_path() -> Path:
    return Path(__file__).resolve().parent.parent / "conf" / "profiles" / "metaquest_v1.toml"


def load_default_profile() -> SelectorProfile:
    return SelectorProfile.from_toml(default_profile_path())


def store_page_url(app_id: str) -> str:
    return f"https://www.meta.com/experiences/{app_id}/reviews/"

"""Fetching raw reviews from VR stores: public API client + scraper adapter."""

from .catalog import load_catalog, select_top_apps
from .scraper import SelectorProfile, scrape_store_reviews
from .steam import fetch_steam_reviews
from .transport import Envelope, HttpTransport, ReplayTransport, fixture_key

__all__ = [
    "load_catalog",
    "select_top_apps",
    "SelectorProfile",
    "scrape_store_reviews",
    "fetch_steam_reviews",
    "Envelope",
    "HttpTransport",
    "ReplayTransport",
    "fixture_key",
]

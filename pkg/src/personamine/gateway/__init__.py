"""HTTP JSON API and the umbrella pipeline CLI."""

from .api import build_app
from .config import AppConfig, load_config

__all__ = ["build_app", "AppConfig", "load_config"]

"""Accessibility persona mining for VR app stores.

Pipeline: ingest store reviews -> curate (filter + classify) -> chunk/embed
into a flat vector index -> retrieval-grounded persona generation, fronted by
a chat session layer and an HTTP gateway.
"""

__version__ = "0.1.0"

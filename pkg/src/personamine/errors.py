"""Domain error hierarchy shared across the pipeline."""

from __future__ import annotations


class PersonamineError(Exception):
    """Base class for all domain errors."""


# --- ingest ---------------------------------------------------------------

class TransportError(PersonamineError):
    """Network or HTTP-level failure. Retriable."""


class RateLimited(TransportError):
    """Store told us to back off; carries the retry-after hint in seconds."""

    def __init__(self, message: str, retry_after: float = 1.0):
        super().__init__(message)
        self.retry_after = retry_after


class MalformedPayload(PersonamineError):
    """A response body could not be parsed; includes offset context when known."""

    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} (at byte offset {offset})"
        super().__init__(message)
        self.offset = offset


class SelectorProfileMismatch(PersonamineError):
    """Page layout no longer matches the selector profile."""

    def __init__(self, selector_name: str, selector: str):
        super().__init__(
            f"selector {selector_name!r} ({selector}) found no match; page layout has likely changed"
        )
        self.selector_name = selector_name
        self.selector = selector


# --- curation --------------------------------------------------------------

class UncategorizedApp(PersonamineError):
    """No tag rule matched and no override exists for the app."""

    def __init__(self, store: str, app_id: str):
        super().__init__(f"no category rule or override for app {store}/{app_id}")
        self.store = store
        self.app_id = app_id


# --- index -----------------------------------------------------------------

class DimensionMismatch(PersonamineError):
    """Vector dimensionality differs from what the index expects."""


class PersistenceError(PersonamineError):
    """Index snapshot could not be written or read back."""


# --- providers / generation --------------------------------------------------

class ProviderUnavailable(PersonamineError):
    """An embedding/LLM provider call failed. Retriable."""


class ExtractionParseError(PersonamineError):
    """Provider output still violates the expected structure after a reprompt."""


class GroundingError(PersonamineError):
    """Persona quotes failed grounding validation after the retry budget."""

    def __init__(self, message: str, violations: list[str] | None = None):
        super().__init__(message)
        self.violations = violations or []


class NoEvidence(PersonamineError):
    """No curated evidence exists for the requested category/dimension."""


class InvariantViolation(PersonamineError):
    """An internal contract was broken; indicates a bug, not bad input."""


# --- session -----------------------------------------------------------------

class IllegalTransition(PersonamineError):
    """A turn intent is not legal in the session's current state."""


class TurnInFlight(PersonamineError):
    """Another turn is already being processed for this session."""

"""Exception hierarchy shared across the toolkit."""


class IconographError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(IconographError):
    """A value violates a documented invariant (empty term, bad weight, ...)."""


class FormatError(IconographError):
    """A file does not conform to its documented schema.

    Messages carry path / line / field context so callers can report the
    offending input precisely.
    """


class ComputationError(IconographError):
    """A numeric operation received unusable input (dimension mismatch, zero vector)."""


class InputError(IconographError):
    """Inputs to an evaluation or command are inconsistent with each other."""


class FetchError(IconographError):
    """An HTTP fetch failed (network error, bad status, wrong content type)."""

    def __init__(self, url: str, reason: str):
        super().__init__(f"{url}: {reason}")
        self.url = url
        self.reason = reason

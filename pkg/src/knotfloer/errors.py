"""Exception hierarchy; the CLI maps each family to its own exit code."""

from __future__ import annotations


class KnotFloerError(Exception):
    """Base class for errors raised by this package."""


class SchemaError(KnotFloerError, ValueError):
    """Input document is malformed."""


class DomainError(KnotFloerError, ValueError):
    """Input is well-formed but mathematically invalid for the requested operation."""


class InternalInvariantError(KnotFloerError, RuntimeError):
    """An internal consistency check failed; indicates a bug or a too-small truncation."""

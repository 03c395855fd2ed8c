"""Exception types shared across the package."""

from __future__ import annotations


class AirtollError(Exception):
    """Base class for errors raised by this package."""


class SchemaError(AirtollError, ValueError):
    """A data file violates its expected schema.

    Carries the offending path and, when known, the 1-based line number so
    loaders can point at the exact row.
    """

    def __init__(self, message: str, *, path: str | None = None, line: int | None = None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f" [{path}" + (f":{line}" if line is not None else "") + "]"
        super().__init__(message + where)


class InfeasibleError(AirtollError, RuntimeError):
    """A scheduling instance cannot satisfy demand in some slot."""

    def __init__(self, message: str, *, slot: int | None = None):
        self.slot = slot
        super().__init__(message if slot is None else f"{message} (slot {slot})")

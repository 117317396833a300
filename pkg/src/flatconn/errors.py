"""Exception types shared across the package."""

from __future__ import annotations


class FlatConnError(Exception):
    """Base class for all library errors."""


class InputError(FlatConnError):
    """Invalid input document; carries a JSON-pointer style location."""

    def __init__(self, message: str, location: str = ""):
        super().__init__(message)
        self.location = location

    def __str__(self) -> str:
        msg = super().__str__()
        return f"{self.location}: {msg}" if self.location else msg


class ComplexError(FlatConnError):
    """Structurally invalid complex (disconnected, bad relator, bad reference)."""


class ClosureCapError(FlatConnError):
    """Group closure grew past the configured element cap."""


class FlatnessError(FlatConnError):
    """A voltage assignment violates flatness on at least one relator."""

    def __init__(self, violations):
        self.violations = tuple(violations)
        parts = ", ".join(str(v) for v in self.violations)
        super().__init__(f"voltage is not flat: {parts}")


class IncompleteAutomatonError(FlatConnError):
    """Operation requires a complete coset automaton (finite index)."""


class EnumerationCapError(FlatConnError):
    """Coset enumeration did not complete within the configured cap."""


class IncidenceError(FlatConnError):
    """A map between complexes does not respect edge incidences."""

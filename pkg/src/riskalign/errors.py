"""Exception types shared across the package.

Everything raised for bad user input derives from InputError so the CLI can
map the whole family to a single usage-error exit code. Structural findings
inside an otherwise well-formed model are NOT exceptions; they are returned
as Violation values by the validators.
"""

from __future__ import annotations


class RiskAlignError(Exception):
    """Base class for package errors."""


class InputError(RiskAlignError):
    """Bad input supplied by the caller (files, ids, flags)."""


class LineError(InputError):
    """Input error tied to a specific line of a text format."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DuplicateIdError(InputError):
    """An id was declared more than once within one id space."""


class ModelFormatError(LineError):
    """A model file could not be parsed."""


class ModelStructureError(InputError):
    """A parsed model breaks a structural invariant (e.g. dangling endpoint)."""


class RulesetFormatError(LineError):
    """A ruleset file could not be parsed."""


class UnknownFrameworkError(InputError):
    """A framework id outside the supported set."""


class FrameworkMismatchError(InputError):
    """Model and ruleset declare different frameworks."""


class OverlayFormatError(LineError):
    """A review overlay file could not be parsed."""


class ReviewError(InputError):
    """A review entry does not apply to the classification it was given."""


class CatalogFormatError(LineError):
    """A risk catalog file could not be parsed."""


class UnknownElementError(InputError, LookupError):
    """A referenced element id is not present in the model."""


class UnknownRiskError(InputError, LookupError):
    """A referenced risk id is not present in the register."""


class PropagationSeedError(InputError):
    """A propagation seed is missing or not a definite IS asset."""

"""Error types shared across the package.

Every failure carries a stable machine-readable ``code`` so the CLI and the
HTTP layer can surface it without matching on message text.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class ValidationIssue:
    """One concrete problem found in a document or value."""

    code: str
    path: str
    message: str
    severity: str = "error"

    def to_dict(self) -> dict:
        return {"code": self.code, "path": self.path, "message": self.message}


class ComplianceError(Exception):
    """Base class for all errors raised by this package."""

    def __init__(self, code: str, message: str, issues: tuple[ValidationIssue, ...] = ()):
        super().__init__(message)
        self.code = code
        self.message = message
        self.issues = tuple(issues)


class ParseFailure(ComplianceError):
    """The document is not syntactically or structurally usable."""


class ValidationFailure(ComplianceError):
    """The input was readable but violates a domain rule."""


class NotFoundError(ComplianceError):
    """A referenced resource does not exist."""


class ConflictError(ComplianceError):
    """The operation would overwrite state that is immutable once written."""

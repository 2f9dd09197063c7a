"""Exception types shared across the package."""

from __future__ import annotations


class RelSmoothError(Exception):
    """Base class for all errors raised by relsmooth."""


class InputError(RelSmoothError):
    """Malformed or inconsistent user input (CLI exit code 2)."""


class ParseError(InputError):
    """JSON text that cannot be decoded."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte offset {offset})")
        self.offset = offset


class SchemaError(InputError):
    """JSON document that decodes but violates the shipped schema."""

    def __init__(self, message: str, path: str):
        super().__init__(f"{path}: {message}")
        self.path = path


class InvalidGraphError(InputError):
    def __init__(self, report):
        super().__init__("invalid dual graph:\n" + "\n".join(f"  - {i}" for i in report.issues))
        self.report = report


class GammaMismatchError(InputError):
    """Tangency data does not match the marks of a graph."""


class InconsistentGammaError(InputError):
    """Tangency data whose per-point totals disagree with the degree."""


class UnstableVertexError(InputError):
    pass


class NotReducedError(InputError):
    """A contracted subtree over the point has more than one component."""


class ConditionsFailedError(RelSmoothError):
    """The relative conditions fail where a smoothing recipe was requested."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class CapacityError(RelSmoothError):
    """Problem size beyond the configured exhaustive-search limits (CLI exit code 3)."""

"""Exception types shared across the package."""


class DigrevError(Exception):
    """Base class for every error raised by digrev."""


class InputError(DigrevError):
    """Malformed or out-of-domain input: unknown vertex, violated precondition, bad file."""


class ValidationError(InputError):
    """A reversion sequence is invalid; ``index`` names the first offending cycle."""

    def __init__(self, index: int, message: str):
        super().__init__(message)
        self.index = index


class ResourceLimitError(DigrevError):
    """An operation refused to start because a configured size cap would be exceeded."""


class InternalError(DigrevError):
    """An internal consistency check failed; indicates a bug, not bad input."""

"""Exception hierarchy shared by every module."""


class PhiShuffleError(Exception):
    """Base class for all library errors."""


class ParseError(PhiShuffleError, ValueError):
    """Malformed text; ``position`` is the 0-based offset of the problem."""

    def __init__(self, message, text="", position=0):
        self.text = text
        self.position = position
        if text:
            message = f"{message} at position {position}: {text!r}"
        super().__init__(message)


class DomainError(PhiShuffleError, ValueError):
    """An index value lies outside its slot domain (e.g. a centre in N>0)."""


class SignatureMismatch(PhiShuffleError, TypeError):
    pass


class LawError(PhiShuffleError, ValueError):
    """Bad law construction: unknown name, missing parameter, bad table."""


class NotAssociativeError(PhiShuffleError):
    pass


class NotDualizableError(PhiShuffleError):
    def __init__(self, message, letter=None):
        self.letter = letter
        super().__init__(message)


class InvariantError(PhiShuffleError, AssertionError):
    """Internal invariant violated; indicates a bug, never bad input."""

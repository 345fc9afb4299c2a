"""Shared exception types for the workbench."""


class IvlabError(Exception):
    """Base class for all package errors."""


class UsageError(IvlabError):
    """Bad command-line or request usage: unknown command, wrong arity, etc."""


class ValidationError(IvlabError):
    """Structurally valid input that violates a mathematical precondition,
    e.g. a localizing-system generator that is not finitely generated."""


class ParseError(UsageError):
    """Syntax error in one of the little expression grammars."""

    def __init__(self, message, text=None, pos=None):
        self.text = text
        self.pos = pos
        if text is not None and pos is not None:
            message = f"{message} at position {pos} in {text!r}"
        super().__init__(message)

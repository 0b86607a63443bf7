"""Exception hierarchy shared by every module."""


class OAColorError(Exception):
    """Base class for all library errors."""


class StructureError(OAColorError, ValueError):
    """Input has the wrong shape (table dimensions, ground set layout, file schema)."""


class PreconditionError(OAColorError, ValueError):
    """Input is well formed but violates an operation's precondition."""


class NonInvertibleError(PreconditionError):
    """A matrix whose determinant shares a factor with the modulus."""

    def __init__(self, message, gcd):
        super().__init__(message)
        self.gcd = gcd


class UnsupportedInputError(OAColorError, ValueError):
    """Input lies outside what a fast path supports."""

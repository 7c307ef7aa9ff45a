"""Exception hierarchy shared by every module of the package."""


class ExceptionalPrimesError(Exception):
    """Base class for all package errors."""


class InvalidInputError(ExceptionalPrimesError, ValueError):
    """Raised when parameters violate an operation's preconditions."""


class OddExponentError(InvalidInputError):
    """The reducible-prime bound is only derived for even level exponents."""


class ScaleLimitError(InvalidInputError):
    """A computation was refused because it exceeds the configured desk-scale limits."""


class DecompositionError(ExceptionalPrimesError):
    """The Hecke action could not be split into simultaneous eigenspaces.

    ``piece`` holds the offending generalized eigenspace (list of rows mod ell).
    """

    def __init__(self, message, piece=None, partial=None):
        super().__init__(message)
        self.piece = piece
        self.partial = partial or []


class LMFDBUnavailableError(ExceptionalPrimesError):
    """No cached data and the network could not be used."""


class PayloadParseError(ExceptionalPrimesError):
    """A fixture or API payload did not have the expected shape."""

    def __init__(self, message, excerpt=""):
        super().__init__(f"{message}: {excerpt[:200]!r}" if excerpt else message)
        self.excerpt = excerpt

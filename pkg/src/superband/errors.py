"""Exception types shared across the package.

Every error raised on purpose by superband derives from :class:`SuperbandError`,
so callers can catch the whole family with one clause while the CLI maps
usage-level problems (ConfigError, ParseError) to exit code 2.
"""

from __future__ import annotations


class SuperbandError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(SuperbandError):
    """A parameter is outside its supported range (generator count, degree cap,
    unknown family kind, missing indeterminate assignment, and so on)."""


class ContextError(SuperbandError):
    """Two values from algebras with different generator counts were mixed."""


class ParityError(SuperbandError):
    """A value violates the even/odd grading required at its position."""


class ShapeError(SuperbandError):
    """Matrix or vector dimensions do not match the operation."""


class NotInvertible(SuperbandError):
    """Inversion was requested for an element whose body vanishes."""


class ParseError(SuperbandError):
    """Malformed serialized input.

    ``offset`` carries the byte offset into the input when the underlying JSON
    decoder reported one, else None.
    """

    def __init__(self, message: str, offset: int | None = None):
        super().__init__(message)
        self.offset = offset

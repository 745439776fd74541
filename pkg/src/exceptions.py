"""Error hierarchy for ring construction, arithmetic and ideal classification."""

from typing import Optional


class ChainRingError(Exception):
    """Base class for every error raised by the library."""


class InvalidInput(ChainRingError, ValueError):
    """Malformed operands, mismatched contexts or out-of-range parameters."""


class ParseError(InvalidInput):
    """Generator or element text that cannot be parsed."""

    def __init__(self, message: str, token: str = "", position: Optional[int] = None):
        self.token = token
        self.position = position
        where = f" at position {position}" if position is not None else ""
        detail = f" (token {token!r}{where})" if token else where
        super().__init__(f"{message}{detail}")


class DivisionByZero(ChainRingError, ZeroDivisionError):
    """Inversion of the zero element."""


class NotAUnit(ChainRingError, ValueError):
    """An operation that requires a unit received a non-unit."""


class NotAnNthPower(ChainRingError, ValueError):
    """Root extraction requested for an element that has no such root."""


class UnsupportedParameter(ChainRingError, ValueError):
    """Parameters outside the family an operation is defined for."""


class TooLarge(ChainRingError, ValueError):
    """An exhaustive search or enumeration would exceed its configured cap."""


class ParadoxError(ChainRingError, RuntimeError):
    """A verified algebraic identity failed; indicates a bug or a false theorem."""


class ClassificationFailure(ChainRingError, RuntimeError):
    """Reconstructed generators do not span the ideal they were read from."""

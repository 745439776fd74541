"""Constacyclic ideals - exact arithmetic over F_{p^m}[u]/<u^t> and its quotient rings."""

__version__ = "0.1.0"

from src.chain_ring import ChainRing, ChainRingElement
from src.config import Settings, get_settings
from src.exceptions import ChainRingError
from src.field import FieldContext
from src.ideals import Ideal, span
from src.logger import get_logger, setup_logging
from src.quotient_ring import ModulusKind, ModulusSpec, QuotElement, RingContext, make_ring

__all__ = [
    "get_settings",
    "Settings",
    "get_logger",
    "setup_logging",
    "ChainRingError",
    "FieldContext",
    "ChainRing",
    "ChainRingElement",
    "ModulusKind",
    "ModulusSpec",
    "RingContext",
    "QuotElement",
    "make_ring",
    "Ideal",
    "span",
]

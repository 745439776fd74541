"""Shared ring fixtures for the unit tests."""

import pytest

from src.config import get_settings, update_settings
from src.quotient_ring import ModulusKind, ring_from_digits


@pytest.fixture(autouse=True)
def restore_settings():
    """Undo any update_settings call made by a test."""
    snapshot = get_settings().model_dump()
    yield
    update_settings(**snapshot)


@pytest.fixture(scope="session")
def t3_ring():
    """R^3[x]/<x^3 - (1 + u^2)> over F_3: phi = x - 1, phi^3 = u^2."""
    return ring_from_digits(3, 1, 1, 3, [1, 0, 1])


@pytest.fixture(scope="session")
def chain_ring_t2():
    """R^2[x]/<x^3 - (1 + u)> over F_3, a chain ring."""
    return ring_from_digits(3, 1, 1, 2, [1, 1])


@pytest.fixture(scope="session")
def tiny_ring():
    """F_2[x]/<x^2 - 1> = F_2[x]/<(x - 1)^2>."""
    return ring_from_digits(2, 1, 1, 1, [1])


@pytest.fixture(scope="session")
def square_split_ring():
    """F_3[x]/<x^2 - 1>: s = 0, splits as (x - 1)(x + 1)."""
    return ring_from_digits(3, 1, 0, 1, [1], n=2)


@pytest.fixture(scope="session")
def quadratic_trace_ring():
    """R^2[x]/<x^4 + (1 + u) x^2 + (1 + u)^2> over F_2."""
    return ring_from_digits(2, 1, 1, 2, [1, 1], kind=ModulusKind.QUADRATIC_TRACE)

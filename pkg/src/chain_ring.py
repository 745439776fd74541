"""The chain ring R^t = F_{p^m}[u]/<u^t>."""

import itertools
import math
from typing import Iterator, List, Sequence

import galois
import numpy as np

from src.config import get_settings
from src.exceptions import (
    InvalidInput,
    NotAnNthPower,
    NotAUnit,
    ParadoxError,
    TooLarge,
    UnsupportedParameter,
)
from src.field import ElementLike, FieldContext
from src.logger import get_logger

logger = get_logger(__name__)


class ChainRing:
    """Context for R^t over a fixed field."""

    def __init__(self, field: FieldContext, t: int):
        if not isinstance(t, int) or t < 1:
            raise InvalidInput(f"t must be >= 1, got {t!r}")
        self.field = field
        self.t = t

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ChainRing):
            return NotImplemented
        return self.field == other.field and self.t == other.t

    def __hash__(self) -> int:
        return hash((self.field, self.t))

    def __repr__(self) -> str:
        return f"ChainRing(p={self.field.p}, m={self.field.m}, t={self.t})"

    @property
    def order(self) -> int:
        return self.field.order**self.t

    def element(self, parts: Sequence[ElementLike]) -> "ChainRingElement":
        """Element from the coefficients of u^0, u^1, ...; missing parts are zero."""
        parts = list(parts)
        if len(parts) > self.t:
            raise InvalidInput(f"{len(parts)} parts given for t={self.t}")
        values = [int(self.field.element(c)) for c in parts]
        values += [0] * (self.t - len(values))
        return ChainRingElement(self, self.field.GF(values))

    def constant(self, c: ElementLike) -> "ChainRingElement":
        return self.element([c])

    @property
    def zero(self) -> "ChainRingElement":
        return self.element([])

    @property
    def one(self) -> "ChainRingElement":
        return self.element([1])

    @property
    def u(self) -> "ChainRingElement":
        return self.element([0, 1]) if self.t > 1 else self.zero

    def u_power(self, j: int) -> "ChainRingElement":
        if j >= self.t:
            return self.zero
        return self.element([0] * j + [1])

    def all_elements(self) -> Iterator["ChainRingElement"]:
        """Every element, in lexicographic order of integer representations."""
        if self.order > get_settings().enumeration_cap:
            raise TooLarge(f"|R^{self.t}| = {self.order} exceeds enumeration cap")
        for values in itertools.product(range(self.field.order), repeat=self.t):
            yield ChainRingElement(self, self.field.GF(list(values)))


class ChainRingElement:
    """delta_0 + u*delta_1 + ... + u^(t-1)*delta_(t-1)."""

    __slots__ = ("ring", "parts")

    def __init__(self, ring: ChainRing, parts: galois.FieldArray):
        if parts.shape != (ring.t,):
            raise InvalidInput(f"expected {ring.t} parts, got shape {parts.shape}")
        self.ring = ring
        self.parts = parts

    # ------------------------------------------------------------------ plumbing

    def _check(self, other: "ChainRingElement") -> None:
        if not isinstance(other, ChainRingElement) or other.ring != self.ring:
            raise InvalidInput("operands belong to different chain rings")

    def _new(self, parts: galois.FieldArray) -> "ChainRingElement":
        return ChainRingElement(self.ring, parts)

    def part(self, i: int) -> galois.FieldArray:
        return self.parts[i]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ChainRingElement):
            return NotImplemented
        return self.ring == other.ring and bool(np.array_equal(self.parts, other.parts))

    def __hash__(self) -> int:
        return hash((self.ring, tuple(int(c) for c in self.parts)))

    def __repr__(self) -> str:
        return f"ChainRingElement({self})"

    def __str__(self) -> str:
        fmt = self.ring.field.format_element
        terms = []
        for i, c in enumerate(self.parts):
            if i == 0:
                terms.append(fmt(c))
            elif i == 1:
                terms.append(f"u*{fmt(c)}")
            else:
                terms.append(f"u^{i}*{fmt(c)}")
        return " + ".join(terms)

    def to_json(self) -> List[List[int]]:
        return [self.ring.field.digits(c) for c in self.parts]

    # ------------------------------------------------------------------ arithmetic

    def __add__(self, other: "ChainRingElement") -> "ChainRingElement":
        self._check(other)
        return self._new(self.parts + other.parts)

    def __sub__(self, other: "ChainRingElement") -> "ChainRingElement":
        self._check(other)
        return self._new(self.parts - other.parts)

    def __neg__(self) -> "ChainRingElement":
        return self._new(-self.parts)

    def __mul__(self, other: "ChainRingElement") -> "ChainRingElement":
        self._check(other)
        return self._new(np.convolve(self.parts, other.parts)[: self.ring.t])

    def scale(self, c: galois.FieldArray) -> "ChainRingElement":
        return self._new(self.parts * c)

    def __pow__(self, n: int) -> "ChainRingElement":
        if n < 0:
            return self.inverse() ** (-n)
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_zero(self) -> bool:
        return not np.any(self.parts)

    def is_unit(self) -> bool:
        return is_unit_chain(self)

    def inverse(self) -> "ChainRingElement":
        """Inverse by Newton lifting of the part-0 inverse."""
        if not self.is_unit():
            raise NotAUnit(f"{self} is not a unit of R^{self.ring.t}")
        ring = self.ring
        b = ring.constant(ring.field.inv(self.parts[0]))
        precision = 1
        while precision < ring.t:
            b = b + b * (ring.one - self * b)
            precision *= 2
        if self * b != ring.one:
            raise ParadoxError(f"Newton inverse of {self} failed to verify")
        return b


def is_unit_chain(a: ChainRingElement) -> bool:
    """A chain ring element is a unit iff its constant part is nonzero."""
    return bool(a.parts[0] != 0)


def is_nth_power_chain(delta: ChainRingElement, n: int) -> bool:
    """A unit is an n-th power in R^t iff its constant part is one in F_{p^m}."""
    field = delta.ring.field
    if math.gcd(n, field.p) != 1:
        raise UnsupportedParameter(f"gcd(n={n}, p={field.p}) != 1")
    if not is_unit_chain(delta):
        raise NotAUnit(f"n-th power test is only defined for units, got {delta}")
    return field.is_nth_power(delta.parts[0], n).holds


def nth_root_lift(delta: ChainRingElement, n: int) -> ChainRingElement:
    """Return beta with beta^n = delta, lifting a field root one u-power at a time."""
    if not is_nth_power_chain(delta, n):
        raise NotAnNthPower(f"{delta} is not an {n}-th power in R^{delta.ring.t}")

    ring = delta.ring
    field = ring.field
    beta0 = field.is_nth_power(delta.parts[0], n).witness
    beta = ring.constant(beta0)
    correction = field.inv(field.scalar(n) * beta0 ** (n - 1))

    for j in range(1, ring.t):
        discrepancy = (delta - beta**n).parts[j]
        if discrepancy != 0:
            beta = beta + ring.u_power(j).scale(correction * discrepancy)

    if beta**n != delta:
        raise ParadoxError(f"root lift of {delta} with n={n} failed to verify")
    logger.debug("Lifted root", n=n, delta=str(delta), root=str(beta))
    return beta


def reduce_mod_u_power(a: ChainRingElement, j: int) -> ChainRingElement:
    """The quotient map R^t -> R^j."""
    if not 1 <= j <= a.ring.t:
        raise InvalidInput(f"j must lie in [1, {a.ring.t}], got {j}")
    target = ChainRing(a.ring.field, j)
    return ChainRingElement(target, a.parts[:j].copy())

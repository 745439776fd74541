"""Exact arithmetic in F_{p^m} and polynomial utilities over it.

Field elements are ``galois`` field array scalars; polynomials are
``galois.Poly`` objects over the same field. The integer representation that
``galois`` uses for F_{p^m} is the base-p evaluation of the polynomial basis
vector, so little-endian digit vectors map to integers by ``sum(d_i * p**i)``.
"""

import math
from typing import Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union

import galois
import numpy as np

from src.config import get_settings
from src.exceptions import (
    DivisionByZero,
    InvalidInput,
    ParadoxError,
    TooLarge,
    UnsupportedParameter,
)
from src.logger import get_logger

logger = get_logger(__name__)

FieldElement = galois.FieldArray
FieldPoly = galois.Poly
ElementLike = Union[int, Sequence[int], galois.FieldArray]


class PowerTest(NamedTuple):
    """Outcome of an n-th power test with an optional witness root."""

    holds: bool
    witness: Optional[galois.FieldArray]


class FieldContext:
    """The field F_{p^m} = F_p[y]/<modulus>."""

    def __init__(self, p: int, m: int = 1, modulus: Optional[Sequence[int]] = None):
        if not isinstance(p, int) or p < 2 or not galois.is_prime(p):
            raise InvalidInput(f"p must be prime, got {p!r}")
        if not isinstance(m, int) or m < 1:
            raise InvalidInput(f"extension degree must be >= 1, got {m!r}")

        self.p = p
        self.m = m
        self.order = p**m
        self.prime_field = galois.GF(p)

        if modulus is None:
            poly = galois.irreducible_poly(p, m, method="min")
        else:
            poly = galois.Poly([int(d) % p for d in modulus], field=self.prime_field, order="asc")
            if poly.degree != m or int(poly.coeffs[0]) != 1:
                raise InvalidInput(f"field modulus must be monic of degree {m}: {list(modulus)}")
            if not poly.is_irreducible():
                raise InvalidInput(f"field modulus {poly} is reducible over F_{p}")
        self.modulus = poly

        if m == 1:
            self.GF = galois.GF(p)
        else:
            self.GF = galois.GF(p**m, irreducible_poly=poly)

    # ------------------------------------------------------------------ identity

    @property
    def modulus_digits(self) -> List[int]:
        return [int(c) for c in self.modulus.coeffs[::-1]]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldContext):
            return NotImplemented
        return (self.p, self.m, self.modulus_digits) == (
            other.p,
            other.m,
            other.modulus_digits,
        )

    def __hash__(self) -> int:
        return hash((self.p, self.m, tuple(self.modulus_digits)))

    def __repr__(self) -> str:
        return f"FieldContext(p={self.p}, m={self.m}, modulus={self.modulus_digits})"

    def split_exponent(self, s: int) -> Tuple[int, int]:
        """Return (q, r) with s = m*q + r and 0 <= r < m."""
        return divmod(s, self.m)

    # ------------------------------------------------------------------ elements

    @property
    def zero(self) -> galois.FieldArray:
        return self.GF(0)

    @property
    def one(self) -> galois.FieldArray:
        return self.GF(1)

    def element(self, value: ElementLike) -> galois.FieldArray:
        """Build an element from an integer representation or a digit vector."""
        if isinstance(value, galois.FieldArray):
            if type(value) is not self.GF:
                raise InvalidInput("field element belongs to a different field")
            return value
        if isinstance(value, (int, np.integer)):
            if not 0 <= int(value) < self.order:
                raise InvalidInput(f"integer {value} is not an element of F_{self.order}")
            return self.GF(int(value))
        digits = [int(d) for d in value]
        if len(digits) > self.m:
            raise InvalidInput(f"digit vector {digits} longer than m={self.m}")
        return self.GF(sum((d % self.p) * self.p**i for i, d in enumerate(digits)))

    def digits(self, a: galois.FieldArray) -> List[int]:
        """Little-endian digit vector of length m."""
        value = int(a)
        return [(value // self.p**i) % self.p for i in range(self.m)]

    def format_element(self, a: galois.FieldArray) -> str:
        return "[" + ",".join(str(d) for d in self.digits(a)) + "]"

    def elements(self) -> galois.FieldArray:
        """All field elements in canonical (integer) order."""
        return self.GF.elements

    def scalar(self, n: int) -> galois.FieldArray:
        """Image of the integer n in the prime subfield."""
        return self.GF(n % self.p)

    def inv(self, a: galois.FieldArray) -> galois.FieldArray:
        if a == 0:
            raise DivisionByZero("inverse of zero in F_%d" % self.order)
        return self.one / a

    # ------------------------------------------------------------------ roots

    def ps_root(self, a: galois.FieldArray, s: int) -> galois.FieldArray:
        """The unique b with b^(p^s) = a."""
        if s < 0:
            raise InvalidInput(f"s must be non-negative, got {s}")
        _, r = self.split_exponent(s)
        b = a ** (self.p ** ((self.m - r) % self.m))
        # Frobenius has order m, so b^(p^s) = b^(p^(s mod m)).
        if b ** (self.p ** (s % self.m)) != a:
            raise ParadoxError(f"p^s-th root of {self.format_element(a)} failed to verify")
        return b

    def is_nth_power(self, a: galois.FieldArray, n: int) -> PowerTest:
        """Test whether a is an n-th power; return a witness root when it is."""
        if n < 1:
            raise InvalidInput(f"n must be positive, got {n}")
        if math.gcd(n, self.p) != 1:
            raise UnsupportedParameter(f"gcd(n={n}, p={self.p}) != 1")
        if a == 0:
            return PowerTest(True, self.zero)

        g = math.gcd(n, self.order - 1)
        if a ** ((self.order - 1) // g) != 1:
            return PowerTest(False, None)

        if self.order > get_settings().field_size_cap:
            raise TooLarge(
                f"witness search over F_{self.order} exceeds field_size_cap="
                f"{get_settings().field_size_cap}"
            )
        candidates = self.elements()
        roots = candidates[candidates**n == a]
        if roots.size == 0:
            raise ParadoxError(f"power criterion holds for {self.format_element(a)} but no root found")
        return PowerTest(True, roots[0])

    def roots_of_unity(self, n: int) -> List[galois.FieldArray]:
        """Nontrivial n-th roots of unity in canonical element order."""
        candidates = self.elements()[1:]
        found = candidates[(candidates**n == 1) & (candidates != 1)]
        return [found[i] for i in range(found.size)]

    # ------------------------------------------------------------------ polynomials

    def poly(self, coeffs: Iterable[ElementLike]) -> galois.Poly:
        """Polynomial from ascending coefficients."""
        values = [int(self.element(c)) for c in coeffs]
        if not values:
            return galois.Poly.Zero(self.GF)
        return galois.Poly(self.GF(values), order="asc")

    def x(self) -> galois.Poly:
        return galois.Poly.Identity(self.GF)

    def constant_poly(self, c: galois.FieldArray) -> galois.Poly:
        return galois.Poly([int(c)], field=self.GF)

    def poly_digits(self, f: galois.Poly) -> List[List[int]]:
        """Ascending coefficient digit vectors; the zero polynomial is []."""
        if is_zero_poly(f):
            return []
        return [self.digits(c) for c in f.coeffs[::-1]]

    def format_poly(self, f: galois.Poly) -> str:
        return "[" + ",".join(self.format_element(c) for c in f.coeffs[::-1]) + "]"

    def factorize(self, f: galois.Poly) -> List[Tuple[galois.Poly, int]]:
        """Irreducible factorization of a monic polynomial, deterministically ordered."""
        if f.field is not self.GF:
            raise InvalidInput("polynomial belongs to a different field")
        if f.degree < 1:
            raise InvalidInput(f"cannot factor constant polynomial {f}")
        if int(f.coeffs[0]) != 1:
            raise InvalidInput(f"polynomial {f} is not monic")

        factors, multiplicities = f.factors()
        pairs = sorted(
            zip(factors, multiplicities),
            key=lambda pair: (pair[0].degree, [int(c) for c in pair[0].coeffs[::-1]]),
        )

        product = galois.Poly.One(self.GF)
        for factor, mult in pairs:
            if not factor.is_irreducible():
                raise ParadoxError(f"factor {factor} of {f} is reducible")
            product *= factor**mult
        if product != f:
            raise ParadoxError(f"factorization of {f} does not multiply back")
        return [(factor, int(mult)) for factor, mult in pairs]


def is_zero_poly(f: galois.Poly) -> bool:
    return not np.any(f.coeffs)


def phi_valuation(f: galois.Poly, phi: galois.Poly, cap: int) -> int:
    """Largest v <= cap with phi^v | f; the zero polynomial has valuation cap."""
    if is_zero_poly(f):
        return cap
    v = 0
    while v < cap:
        quotient, remainder = divmod(f, phi)
        if not is_zero_poly(remainder):
            break
        f = quotient
        v += 1
    return v

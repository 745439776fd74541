"""The residue ring A = F_{p^m}[x]/<phi^(p^s)> for an irreducible phi."""

from typing import Optional

import galois

from src.exceptions import DivisionByZero, InvalidInput, NotAUnit, ParadoxError
from src.field import FieldContext, is_zero_poly, phi_valuation


class ResidueRing:
    """Polynomials modulo phi^cap; every ideal is <phi^v> for some 0 <= v <= cap."""

    def __init__(self, field: FieldContext, phi: galois.Poly, cap: int):
        if cap < 1:
            raise InvalidInput(f"cap must be positive, got {cap}")
        if not phi.is_irreducible():
            raise InvalidInput(f"phi = {phi} must be irreducible")
        self.field = field
        self.phi = phi
        self.cap = cap
        self.modulus = phi**cap

    @property
    def zero(self) -> galois.Poly:
        return galois.Poly.Zero(self.field.GF)

    @property
    def one(self) -> galois.Poly:
        return galois.Poly.One(self.field.GF)

    def reduce(self, f: galois.Poly) -> galois.Poly:
        return f % self.modulus

    def mul(self, f: galois.Poly, g: galois.Poly) -> galois.Poly:
        return (f * g) % self.modulus

    def phi_power(self, e: int) -> galois.Poly:
        if e < 0:
            raise InvalidInput(f"negative phi exponent {e}")
        if e >= self.cap:
            return self.zero
        return self.phi**e

    def valuation(self, f: galois.Poly) -> int:
        """phi-adic valuation of f mod phi^cap; zero has valuation cap."""
        return phi_valuation(self.reduce(f), self.phi, self.cap)

    def is_unit(self, f: galois.Poly) -> bool:
        return self.valuation(f) == 0

    def inverse(self, f: galois.Poly) -> galois.Poly:
        reduced = self.reduce(f)
        if is_zero_poly(reduced):
            raise DivisionByZero("inverse of zero in the residue ring")
        if not self.is_unit(reduced):
            raise NotAUnit(f"{f} is divisible by phi")
        d, s, _ = galois.egcd(reduced, self.modulus)
        if d != self.one:
            raise ParadoxError(f"gcd({f}, phi^{self.cap}) = {d}")
        return s % self.modulus

    def unit_part(self, f: galois.Poly, valuation: Optional[int] = None) -> galois.Poly:
        """h with f = phi^v * h, h taken modulo phi^(cap - v)."""
        v = self.valuation(f) if valuation is None else valuation
        if v >= self.cap:
            return self.zero
        quotient, remainder = divmod(self.reduce(f), self.phi**v)
        if not is_zero_poly(remainder):
            raise InvalidInput(f"phi^{v} does not divide {f}")
        return quotient

    def __repr__(self) -> str:
        return f"ResidueRing(phi={self.phi}, cap={self.cap})"

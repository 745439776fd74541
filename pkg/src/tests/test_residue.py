"""Tests for the residue ring F_{p^m}[x]/<phi^(p^s)>."""

import pytest

from src.exceptions import DivisionByZero, InvalidInput, NotAUnit
from src.field import FieldContext
from src.residue import ResidueRing


@pytest.fixture
def residue():
    field = FieldContext(3)
    return ResidueRing(field, field.poly([2, 1]), 3)


class TestResidueRing:
    """Test valuation, units and inversion modulo (x - 1)^3 over F_3."""

    def test_valuation(self, residue):
        """Test valuations of phi powers and zero."""
        phi = residue.phi
        assert residue.valuation(phi**2) == 2
        assert residue.valuation(phi**3) == 3
        assert residue.valuation(residue.zero) == 3
        assert residue.valuation(residue.one) == 0

    def test_phi_power_past_cap(self, residue):
        """Test phi^e vanishes for e >= cap."""
        assert residue.phi_power(3) == residue.zero
        with pytest.raises(InvalidInput):
            residue.phi_power(-1)

    def test_inverse(self, residue):
        """Test (1 + phi) (1 + phi)^-1 = 1 modulo phi^3."""
        h = residue.one + residue.phi
        assert residue.mul(h, residue.inverse(h)) == residue.one

    def test_inverse_of_non_unit(self, residue):
        """Test phi is not invertible."""
        with pytest.raises(NotAUnit):
            residue.inverse(residue.phi)

    def test_inverse_of_zero(self, residue):
        """Test zero raises DivisionByZero."""
        with pytest.raises(DivisionByZero):
            residue.inverse(residue.phi**3)

    def test_unit_part(self, residue):
        """Test phi (1 + phi) has unit part 1 + phi."""
        h = residue.one + residue.phi
        assert residue.unit_part(residue.phi * h) == h

    def test_requires_irreducible_phi(self):
        """Test a reducible phi is refused."""
        field = FieldContext(3)
        with pytest.raises(InvalidInput):
            ResidueRing(field, field.poly([2, 0, 1]), 2)

"""Tests for F_{p^m} arithmetic and polynomial helpers."""

import galois
import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.config import update_settings
from src.exceptions import DivisionByZero, InvalidInput, TooLarge, UnsupportedParameter
from src.field import FieldContext, is_zero_poly, phi_valuation


class TestFieldContext:
    """Test field construction and element conversion."""

    def test_prime_field(self):
        """Test F_p uses the prime field directly."""
        field = FieldContext(3)
        assert field.order == 3
        assert field.modulus_digits == [0, 1]
        assert int(field.element(2)) == 2

    def test_extension_field_with_default_modulus(self):
        """Test F_4 gets a monic irreducible modulus of degree 2."""
        field = FieldContext(2, 2)
        assert field.order == 4
        assert field.modulus_digits == [1, 1, 1]

    def test_explicit_modulus(self):
        """Test an explicit modulus is accepted and compared by value."""
        assert FieldContext(3, 2, [1, 0, 1]) == FieldContext(3, 2, [1, 0, 1])
        assert FieldContext(3, 2, [1, 0, 1]) != FieldContext(3, 2, [2, 2, 1])

    def test_rejects_non_prime(self):
        """Test p must be prime."""
        with pytest.raises(InvalidInput, match="prime"):
            FieldContext(4)

    def test_rejects_reducible_modulus(self):
        """Test a reducible field modulus is refused."""
        with pytest.raises(InvalidInput, match="reducible"):
            FieldContext(2, 2, [1, 0, 1])

    def test_digit_vector_round_trip(self):
        """Test digit vectors are little-endian base-p expansions."""
        field = FieldContext(3, 2, [2, 2, 1])
        a = field.element([1, 2])
        assert int(a) == 1 + 2 * 3
        assert field.digits(a) == [1, 2]
        assert field.format_element(a) == "[1,2]"

    def test_integer_out_of_range(self):
        """Test integers outside [0, q) are rejected."""
        with pytest.raises(InvalidInput):
            FieldContext(3).element(3)

    def test_inverse_of_zero(self):
        """Test inverting zero raises DivisionByZero."""
        field = FieldContext(5)
        with pytest.raises(DivisionByZero):
            field.inv(field.zero)

    @given(st.integers(min_value=1, max_value=8))
    def test_inverse_property(self, value):
        """Test a * a^-1 = 1 for every nonzero element of F_9."""
        field = FieldContext(3, 2)
        a = field.element(value)
        assert a * field.inv(a) == field.one


class TestRoots:
    """Test p^s-th roots, n-th power tests and roots of unity."""

    @pytest.mark.parametrize("s", [0, 1, 2, 3])
    def test_ps_root_inverts_frobenius(self, s):
        """Test ps_root(a)^(p^s) = a over F_4."""
        field = FieldContext(2, 2)
        for a in field.elements():
            b = field.ps_root(a, s)
            assert b ** (2**s) == a

    def test_ps_root_negative_s(self):
        """Test a negative exponent is invalid."""
        with pytest.raises(InvalidInput):
            FieldContext(3).ps_root(FieldContext(3).one, -1)

    def test_squares_in_f7(self):
        """Test quadratic residues of F_7 are 1, 2, 4."""
        field = FieldContext(7)
        squares = [int(a) for a in field.elements()[1:] if field.is_nth_power(a, 2).holds]
        assert squares == [1, 2, 4]

    def test_nth_power_witness(self):
        """Test the witness is a genuine root."""
        field = FieldContext(7)
        test = field.is_nth_power(field.element(6), 3)
        assert test.holds
        assert test.witness**3 == field.element(6)

    def test_non_power_has_no_witness(self):
        """Test 3 is not a square in F_7."""
        test = FieldContext(7).is_nth_power(FieldContext(7).element(3), 2)
        assert not test.holds
        assert test.witness is None

    def test_nth_power_needs_coprime_n(self):
        """Test gcd(n, p) != 1 is unsupported."""
        field = FieldContext(3)
        with pytest.raises(UnsupportedParameter):
            field.is_nth_power(field.one, 3)

    def test_witness_search_respects_cap(self):
        """Test the witness search refuses fields above field_size_cap."""
        update_settings(field_size_cap=4)
        field = FieldContext(7)
        with pytest.raises(TooLarge):
            field.is_nth_power(field.one, 2)

    def test_cube_roots_of_unity_in_f7(self):
        """Test b = 2 and c = 4 in canonical order."""
        roots = FieldContext(7).roots_of_unity(3)
        assert [int(r) for r in roots] == [2, 4]


class TestPolynomials:
    """Test polynomial construction, formatting and factorization."""

    def test_poly_ascending(self):
        """Test coefficients are read lowest degree first."""
        field = FieldContext(3)
        f = field.poly([2, 0, 1])
        assert f == galois.Poly([1, 0, 2], field=field.GF)
        assert field.poly_digits(f) == [[2], [0], [1]]
        assert field.format_poly(f) == "[[2],[0],[1]]"

    def test_zero_poly(self):
        """Test the empty coefficient list is the zero polynomial."""
        field = FieldContext(3)
        assert is_zero_poly(field.poly([]))
        assert field.poly_digits(field.poly([])) == []

    def test_factorize_irreducible(self):
        """Test x^2 + 1 is irreducible over F_3."""
        field = FieldContext(3)
        f = field.poly([1, 0, 1])
        assert field.factorize(f) == [(f, 1)]

    def test_factorize_repeated_factor(self):
        """Test x^3 - 1 = (x - 1)^3 over F_3."""
        field = FieldContext(3)
        factors = field.factorize(field.poly([2, 0, 0, 1]))
        assert factors == [(field.poly([2, 1]), 3)]

    def test_factorize_rejects_non_monic(self):
        """Test non-monic input is refused."""
        field = FieldContext(3)
        with pytest.raises(InvalidInput, match="monic"):
            field.factorize(field.poly([1, 2]))

    def test_phi_valuation(self):
        """Test valuations of powers of x - 1."""
        field = FieldContext(3)
        phi = field.poly([2, 1])
        assert phi_valuation(phi**2 * field.poly([1, 1]), phi, 5) == 2
        assert phi_valuation(phi**7, phi, 5) == 5
        assert phi_valuation(field.poly([]), phi, 5) == 5

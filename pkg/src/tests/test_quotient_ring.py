"""Tests for the quotient rings R^t[x]/<f(x)>."""

import galois
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.exceptions import DivisionByZero, InvalidInput, NotAUnit, UnsupportedParameter
from src.quotient_ring import (
    LevelTerm,
    ModulusKind,
    inverse,
    is_unit_quot,
    poly_unit_check,
    recompose,
    ring_from_digits,
    u2_relation_decompose,
)

coords9 = st.lists(st.integers(min_value=0, max_value=2), min_size=9, max_size=9)


class TestRingConstruction:
    """Test derived constants of a constructed ring."""

    def test_t3_constants(self, t3_ring):
        """Test p^s, dimensions, k and the nilpotency index."""
        assert (t3_ring.P, t3_ring.D, t3_ring.N, t3_ring.dim) == (3, 1, 3, 9)
        assert t3_ring.k == 2
        assert t3_ring.nilp_index == 6
        assert t3_ring.phi_irreducible
        assert t3_ring.phi == t3_ring.field.poly([2, 1])

    def test_chain_constants(self, chain_ring_t2):
        """Test k = 1 gives nilpotency index t p^s."""
        assert chain_ring_t2.k == 1
        assert chain_ring_t2.nilp_index == 6

    def test_no_u_part(self):
        """Test phi^(p^s) = 0 when delta is a field constant."""
        ring = ring_from_digits(3, 1, 1, 2, [1])
        assert ring.k is None
        assert ring.nilp_index == 3
        assert ring.phi_power.is_zero()

    def test_modulus_relation(self, t3_ring):
        """Test x^(p^s) equals delta in the quotient."""
        delta = t3_ring.from_chain(t3_ring.spec.delta)
        assert t3_ring.x**3 == delta

    def test_relation_unit(self, t3_ring):
        """Test phi^3 = u^2 * 1 for x^3 - (1 + u^2) over F_3."""
        assert t3_ring.relation_unit() == galois.Poly.One(t3_ring.field.GF)
        assert t3_ring.phi_power == t3_ring.u**2

    def test_non_unit_constant(self):
        """Test a non-unit delta is refused."""
        with pytest.raises(NotAUnit):
            ring_from_digits(3, 1, 1, 3, [0, 1])

    def test_n_divisible_by_p(self):
        """Test gcd(n, p) != 1 is unsupported."""
        with pytest.raises(UnsupportedParameter):
            ring_from_digits(3, 1, 1, 1, [1], n=3)

    def test_quadratic_trace_needs_p_not_3(self):
        """Test the quadratic-trace modulus is refused in characteristic 3."""
        with pytest.raises(UnsupportedParameter):
            ring_from_digits(3, 1, 1, 2, [1, 1], kind=ModulusKind.QUADRATIC_TRACE)

    def test_quadratic_trace_in_characteristic_two(self):
        """Test the base degree 2 of the quadratic-trace modulus is not a length."""
        ring = ring_from_digits(2, 1, 1, 2, [1, 1], kind=ModulusKind.QUADRATIC_TRACE)
        assert ring.spec.n == 2 and ring.p == 2
        assert ring.dim == 8

    def test_constacyclic_even_n_in_characteristic_two(self):
        """Test x^(2 p^s) - delta over F_2 is still refused."""
        with pytest.raises(UnsupportedParameter, match="gcd"):
            ring_from_digits(2, 1, 1, 2, [1, 1], n=2)

    def test_quadratic_trace_ring(self, quadratic_trace_ring):
        """Test phi = x^2 + x + 1 and the level-1 relation."""
        ring = quadratic_trace_ring
        assert ring.phi == ring.field.poly([1, 1, 1])
        assert ring.D == 2 and ring.k == 1
        assert ring.relation_unit() == ring.quadratic_trace_relation()

    def test_reducible_phi(self, square_split_ring):
        """Test x^2 - 1 over F_3 has a reducible base polynomial."""
        assert not square_split_ring.phi_irreducible

    def test_describe(self, t3_ring):
        """Test the description names t and the field."""
        assert t3_ring.describe().startswith("R^3[x]/<")
        assert "F_3" in t3_ring.describe()


class TestElements:
    """Test element construction and arithmetic."""

    def test_text_form(self, t3_ring):
        """Test canonical terms print as u^k*phi^j*x^i*[digits]."""
        a = t3_ring.u * t3_ring.phi_element**2 + t3_ring.one.scale(t3_ring.field.element(2))
        assert str(a) == "u^0*phi^0*x^0*[2] + u^1*phi^2*x^0*[1]"
        assert str(t3_ring.zero) == "0"

    def test_basis_element_ranges(self, t3_ring):
        """Test indices outside the canonical ranges are refused."""
        with pytest.raises(InvalidInput):
            t3_ring.basis_element(3, 0, 0)

    def test_element_coordinate_count(self, t3_ring):
        """Test the coordinate count must equal the dimension."""
        with pytest.raises(InvalidInput):
            t3_ring.element([1, 2])

    def test_nested_coordinates(self, t3_ring):
        """Test nested[k][j][i] holds digit vectors."""
        nested = t3_ring.u.nested()
        assert nested[1][0][0] == [1]
        assert nested[0][0][0] == [0]

    def test_from_poly_high_degree(self, t3_ring):
        """Test reduction of polynomials of degree above deg f."""
        x = t3_ring.field.x()
        assert t3_ring.from_poly(x**6) == t3_ring.x**6

    def test_mixed_rings(self, t3_ring, chain_ring_t2):
        """Test elements of different rings do not combine."""
        with pytest.raises(InvalidInput):
            t3_ring.one + chain_ring_t2.one

    @settings(max_examples=40, deadline=None)
    @given(coords9, coords9, coords9)
    def test_ring_laws(self, a, b, c):
        """Test commutativity, associativity and distributivity."""
        ring = ring_from_digits(3, 1, 1, 3, [1, 0, 1])
        x, y, z = ring.element(a), ring.element(b), ring.element(c)
        assert x * y == y * x
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z


class TestUnits:
    """Test unit detection and inversion."""

    def test_x_is_a_unit(self, t3_ring):
        """Test x is invertible since x^3 = delta."""
        assert is_unit_quot(t3_ring.x)
        assert t3_ring.x * inverse(t3_ring.x) == t3_ring.one

    def test_phi_is_not_a_unit(self, t3_ring):
        """Test phi is nilpotent."""
        assert not is_unit_quot(t3_ring.phi_element)
        with pytest.raises(NotAUnit):
            inverse(t3_ring.phi_element)

    def test_inverse_of_zero(self, t3_ring):
        """Test zero raises DivisionByZero."""
        with pytest.raises(DivisionByZero):
            inverse(t3_ring.zero)

    def test_reducible_phi_uses_rank(self, square_split_ring):
        """Test x - 1 is a zero divisor of F_3[x]/<x^2 - 1>."""
        ring = square_split_ring
        assert not is_unit_quot(ring.x - ring.one)
        assert is_unit_quot(ring.x)

    def test_poly_unit_check(self, t3_ring):
        """Test series inversion of a constant and of 1 + phi."""
        field = t3_ring.field
        assert poly_unit_check(t3_ring, field.poly([2])) == t3_ring.scalar(2)
        chain = ring_from_digits(3, 1, 1, 2, [1, 1])
        g = field.poly([1])
        assert poly_unit_check(chain, g) == chain.one

    def test_poly_unit_check_degree(self, t3_ring):
        """Test g must have degree below deg phi."""
        with pytest.raises(InvalidInput):
            poly_unit_check(t3_ring, t3_ring.field.poly([1, 1]))

    def test_poly_unit_check_zero(self, t3_ring):
        """Test the zero polynomial is refused."""
        with pytest.raises(DivisionByZero):
            poly_unit_check(t3_ring, t3_ring.field.poly([]))


class TestLevelDecomposition:
    """Test the u^k phi^v h decomposition."""

    def test_decompose_and_recompose(self, t3_ring):
        """Test a = phi^2 + u phi + 2 u^2 splits per level."""
        ring = t3_ring
        phi = ring.phi_element
        a = phi**2 + ring.u * phi + (ring.u**2).scale(ring.field.element(2))
        terms = u2_relation_decompose(a)
        assert [(term.level, term.exponent) for term in terms] == [(0, 2), (1, 1), (2, 0)]
        assert recompose(ring, terms) == a

    def test_recompose_explicit_terms(self, t3_ring):
        """Test recompose of hand-built terms."""
        field = t3_ring.field
        terms = [LevelTerm(1, 2, field.poly([1]))]
        assert recompose(t3_ring, terms) == t3_ring.u * t3_ring.phi_element**2

    def test_decompose_zero(self, t3_ring):
        """Test the zero element has no decomposition."""
        with pytest.raises(InvalidInput):
            u2_relation_decompose(t3_ring.zero)

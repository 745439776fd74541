"""Tests for generator and ring-constant text forms."""

import pytest

from src.exceptions import InvalidInput, ParseError
from src.parsing import (
    delta_text,
    parse_delta,
    parse_element,
    parse_generators,
    parse_int_list,
    tokenize,
)


class TestTokenize:
    """Test the generator tokenizer."""

    def test_kinds(self):
        """Test numbers, names, scalars and operators are told apart."""
        kinds = [token.kind for token in tokenize("2*phi^3 + [1,0]")]
        assert kinds == ["number", "op", "name", "op", "number", "op", "scalar"]

    def test_unexpected_character(self):
        """Test the position of a stray character is reported."""
        with pytest.raises(ParseError) as excinfo:
            tokenize("u $")
        assert excinfo.value.position == 2
        assert excinfo.value.token == "$"


class TestParseElement:
    """Test evaluation of generator text in R^3[x]/<x^3 - (1 + u^2)>."""

    def test_symbols(self, t3_ring):
        """Test u, phi and x evaluate to the ring generators."""
        assert parse_element(t3_ring, "u^2") == t3_ring.u**2
        assert parse_element(t3_ring, "phi") == t3_ring.phi_element
        assert parse_element(t3_ring, "x") == t3_ring.x

    def test_phi_relation(self, t3_ring):
        """Test (x - 1)^3 = u^2 in this ring."""
        assert parse_element(t3_ring, "(x-1)^3") == parse_element(t3_ring, "u^2")

    def test_scalars(self, t3_ring):
        """Test integers reduce mod p and bracketed digits give field scalars."""
        assert parse_element(t3_ring, "[2]") == t3_ring.scalar(2)
        assert parse_element(t3_ring, "5") == t3_ring.scalar(2)

    def test_leading_minus(self, t3_ring):
        """Test a leading minus negates the first term only."""
        assert parse_element(t3_ring, "-u + phi") == t3_ring.phi_element - t3_ring.u

    def test_printed_form_parses_back(self, t3_ring):
        """Test str() output is valid generator text."""
        a = t3_ring.u * t3_ring.phi_element**2 + t3_ring.scalar(2)
        assert parse_element(t3_ring, str(a)) == a
        assert parse_element(t3_ring, str(t3_ring.zero)) == t3_ring.zero

    def test_parse_generators(self, t3_ring):
        """Test a list of texts parses element by element."""
        assert parse_generators(t3_ring, ["u", "phi"]) == [t3_ring.u, t3_ring.phi_element]

    @pytest.mark.parametrize(
        "text, message",
        [
            ("", "empty generator"),
            ("u^", "unexpected end of input"),
            ("y", "unknown symbol"),
            ("u^phi", "exponent"),
            ("(u", "unexpected end of input"),
            ("u phi", "unexpected token"),
            ("[1,2]", "more than m=1"),
            ("[]", "empty field scalar"),
        ],
    )
    def test_errors(self, t3_ring, text, message):
        """Test malformed text raises ParseError with a useful message."""
        with pytest.raises(ParseError, match=message):
            parse_element(t3_ring, text)

    def test_parse_error_is_invalid_input(self, t3_ring):
        """Test ParseError is caught as InvalidInput."""
        with pytest.raises(InvalidInput):
            parse_element(t3_ring, "?")


class TestParseDelta:
    """Test ring-constant digit groups."""

    def test_prime_field(self):
        """Test 1,0,1 is 1 + u^2."""
        assert parse_delta("1,0,1", 3) == [[1], [0], [1]]

    def test_extension_field(self):
        """Test colons separate digits of one field element."""
        groups = parse_delta("1:1,0:1", 2)
        assert groups == [[1, 1], [0, 1]]
        assert delta_text(groups) == "1:1,0:1"

    @pytest.mark.parametrize("text", ["3", "a", "1,,1", "1:-1"])
    def test_errors(self, text):
        """Test digits must be present, numeric and below p."""
        with pytest.raises(ParseError):
            parse_delta(text, 3)


class TestParseIntList:
    """Test comma-separated integer lists."""

    def test_values(self):
        """Test spacing is ignored and the empty string is empty."""
        assert parse_int_list("2, 3,5") == [2, 3, 5]
        assert parse_int_list("") == []

    def test_error(self):
        """Test non-integers are refused."""
        with pytest.raises(ParseError):
            parse_int_list("2,x")

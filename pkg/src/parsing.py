"""Text forms of ring constants and ideal generators.

Generators are sums of products of ``u``, ``phi``, ``x``, field scalars
``[d0,d1,...]`` (little-endian digits) and integers, with ``^`` for powers,
``*``, ``+``, ``-`` and parentheses. Whitespace is ignored, so the text that
``str(QuotElement)`` prints parses back to the same element.

Ring constants are given as comma-separated digit groups, one per u-power,
with ``:`` separating the digits of one field element: ``1,0,1`` is 1 + u^2 and
``1:1,0:1`` is (1 + y) + u*y over F_{p^2}.
"""

import re
from dataclasses import dataclass
from typing import List, Optional

from src.exceptions import ParseError
from src.quotient_ring import QuotElement, RingContext

TOKEN_PATTERN = re.compile(
    r"\s*(?:(?P<number>\d+)|(?P<name>[A-Za-z_]+)|(?P<scalar>\[[^\]]*\])|(?P<op>[+\-*^()]))"
)

SYMBOLS = ("u", "phi", "x")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int


def tokenize(text: str) -> List[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        match = TOKEN_PATTERN.match(text, pos)
        if not match or match.end() == pos:
            raise ParseError("unexpected character", token=text[pos], position=pos)
        kind = match.lastgroup
        start = match.start(kind)
        tokens.append(Token(kind, match.group(kind), start))
        pos = match.end()
    return tokens


class GeneratorParser:
    """Recursive-descent parser that evaluates directly in a quotient ring."""

    def __init__(self, ring: RingContext, text: str):
        self.ring = ring
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0

    def _peek(self) -> Optional[Token]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _take(self) -> Token:
        token = self._peek()
        if token is None:
            raise ParseError("unexpected end of input", position=len(self.text))
        self.pos += 1
        return token

    def _expect_op(self, op: str) -> None:
        token = self._take()
        if token.kind != "op" or token.text != op:
            raise ParseError(f"expected {op!r}", token=token.text, position=token.position)

    def parse(self) -> QuotElement:
        if not self.tokens:
            raise ParseError("empty generator", position=0)
        value = self._expression()
        leftover = self._peek()
        if leftover is not None:
            raise ParseError("unexpected token", token=leftover.text, position=leftover.position)
        return value

    def _expression(self) -> QuotElement:
        token = self._peek()
        if token is not None and token.kind == "op" and token.text == "-":
            self._take()
            value = -self._term()
        else:
            value = self._term()
        while True:
            token = self._peek()
            if token is None or token.kind != "op" or token.text not in "+-":
                return value
            self._take()
            if token.text == "+":
                value = value + self._term()
            else:
                value = value - self._term()

    def _term(self) -> QuotElement:
        value = self._power()
        while True:
            token = self._peek()
            if token is None or token.kind != "op" or token.text != "*":
                return value
            self._take()
            value = value * self._power()

    def _power(self) -> QuotElement:
        base = self._atom()
        token = self._peek()
        if token is None or token.kind != "op" or token.text != "^":
            return base
        self._take()
        exponent = self._take()
        if exponent.kind != "number":
            raise ParseError(
                "exponent must be a non-negative integer",
                token=exponent.text,
                position=exponent.position,
            )
        return base ** int(exponent.text)

    def _atom(self) -> QuotElement:
        ring = self.ring
        token = self._take()
        if token.kind == "number":
            return ring.scalar(ring.field.scalar(int(token.text)))
        if token.kind == "scalar":
            return ring.scalar(self._scalar_digits(token))
        if token.kind == "name":
            if token.text == "u":
                return ring.u
            if token.text == "phi":
                return ring.phi_element
            if token.text == "x":
                return ring.x
            raise ParseError(
                f"unknown symbol, expected one of {SYMBOLS}",
                token=token.text,
                position=token.position,
            )
        if token.text == "(":
            value = self._expression()
            self._expect_op(")")
            return value
        raise ParseError("unexpected token", token=token.text, position=token.position)

    def _scalar_digits(self, token: Token) -> List[int]:
        body = token.text[1:-1].strip()
        if not body:
            raise ParseError("empty field scalar", token=token.text, position=token.position)
        try:
            digits = [int(d) for d in body.split(",")]
        except ValueError:
            raise ParseError(
                "field scalar digits must be integers", token=token.text, position=token.position
            )
        if len(digits) > self.ring.m:
            raise ParseError(
                f"field scalar has more than m={self.ring.m} digits",
                token=token.text,
                position=token.position,
            )
        return digits


def parse_element(ring: RingContext, text: str) -> QuotElement:
    """Evaluate a generator text in the ring."""
    return GeneratorParser(ring, text).parse()


def parse_generators(ring: RingContext, texts: List[str]) -> List[QuotElement]:
    return [parse_element(ring, text) for text in texts]


def parse_delta(text: str, p: int) -> List[List[int]]:
    """Digit groups of a ring constant, one per u-power."""
    groups = []
    position = 0
    for group in text.split(","):
        stripped = group.strip()
        if not stripped:
            raise ParseError("empty digit group", token=group, position=position)
        digits = []
        for digit in stripped.split(":"):
            if not digit.strip().isdigit():
                raise ParseError("digits must be non-negative integers", token=digit, position=position)
            value = int(digit)
            if value >= p:
                raise ParseError(f"digit {value} is not below p={p}", token=digit, position=position)
            digits.append(value)
        groups.append(digits)
        position += len(group) + 1
    return groups


def parse_int_list(text: str) -> List[int]:
    """Comma-separated integers; an empty string is the empty list."""
    if not text.strip():
        return []
    values = []
    for item in text.split(","):
        item = item.strip()
        if not item.lstrip("-").isdigit():
            raise ParseError("expected an integer", token=item)
        values.append(int(item))
    return values


def delta_text(groups: List[List[int]]) -> str:
    return ",".join(":".join(str(d) for d in group) for group in groups)

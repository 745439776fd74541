"""Closed forms for the smallest u^2-exponents of the t = 3 ideal generators.

The family is R^3[x]/<f> with phi irreducible and phi^(p^s) = u^2 w, w a unit
of the residue ring A = F_{p^m}[x]/<phi^(p^s)>. For the generators

    g1 = phi^a + u phi^t0 h0 + u^2 phi^t1 h1
    g2 = u phi^b + u^2 phi^t2 h2

the values below are the smallest e with u^2 phi^e in the ideal they span.
``printed_*`` evaluate the same expressions with w = 1 and without the
kernel terms; the census asserts the exact forms and reports agreement with
the printed ones as informational.
"""

from functools import lru_cache
from typing import List, Optional

import galois

from src.exceptions import InvalidInput, UnsupportedParameter
from src.field import is_zero_poly
from src.logger import get_logger
from src.quotient_ring import QuotElement, RingContext
from src.residue import ResidueRing

logger = get_logger(__name__)


def in_t3_family(ring: RingContext) -> bool:
    """t = 3, first u-level of the ring constant is 2, phi irreducible."""
    return ring.t == 3 and ring.k == 2 and ring.phi_irreducible


def require_t3_family(ring: RingContext) -> None:
    if not in_t3_family(ring):
        raise UnsupportedParameter(
            f"closed forms need t=3, k=2 and irreducible phi; got t={ring.t}, k={ring.k}, "
            f"phi irreducible={ring.phi_irreducible}"
        )


class ParameterLemmas:
    """Exact and printed closed forms bound to one ring of the t = 3 family."""

    def __init__(self, ring: RingContext):
        require_t3_family(ring)
        self.ring = ring
        self.P = ring.P
        self.A = ResidueRing(ring.field, ring.phi, ring.P)
        self.w = self.A.reduce(ring.relation_unit())
        if not self.A.is_unit(self.w):
            raise UnsupportedParameter(f"phi^(p^s) = u^2 w with w = {self.w} not a unit")

    # ------------------------------------------------------------------ helpers

    def _unit(self, h: Optional[galois.Poly], name: str) -> Optional[galois.Poly]:
        if h is None or is_zero_poly(self.A.reduce(h)):
            return None
        if not self.A.is_unit(h):
            raise InvalidInput(f"{name} = {h} must be zero or a unit")
        return self.A.reduce(h)

    def _phi(self, e: int) -> galois.Poly:
        return self.A.phi_power(e)

    def _check_range(self, name: str, value: int, low: int, high: int) -> None:
        if not low <= value < high:
            raise InvalidInput(f"{name} = {value} outside [{low}, {high})")

    def kernel_exponent(self, a: int, t0: int) -> int:
        """p^s - a + t0: the u^2 exponent reached by u phi^(p^s - a) g1."""
        return self.P - a + t0

    def relation_cofactor(self, a: int, t1: int, h1: Optional[galois.Poly]) -> galois.Poly:
        """W = w + phi^(p^s - a + t1) h1, the u^2 carry of phi^(p^s - a) g1 scaled back."""
        if h1 is None:
            return self.w
        return self.A.reduce(self.w + self._phi(self.P - a + t1) * h1)

    # ------------------------------------------------------------------ type 3

    def type3(self, a: int, t: int, h: Optional[galois.Poly]) -> int:
        """Smallest u^2 exponent of <u phi^a + u^2 phi^t h>."""
        h = self._unit(h, "h")
        self._check_range("a", a, 0, self.P)
        if h is None:
            return a
        self._check_range("t", t, 0, a)
        return min(a, self.P - a + t)

    # ------------------------------------------------------------------ type 5

    def _check_type5(self, a, t0, t1, h0, h1) -> None:
        self._check_range("a", a, 0, self.P)
        if h0 is not None:
            self._check_range("t0", t0, 0, a)
        if h1 is not None:
            self._check_range("t1", t1, 0, a)

    def type5(
        self,
        a: int,
        t0: int,
        t1: int,
        h0: Optional[galois.Poly],
        h1: Optional[galois.Poly],
    ) -> int:
        """Smallest u^2 exponent of <g1>."""
        h0, h1 = self._unit(h0, "h0"), self._unit(h1, "h1")
        self._check_type5(a, t0, t1, h0, h1)
        e0 = self.kernel_exponent(a, t0)
        if h0 is None or a < e0:
            return 0
        h0_inv = self.A.inverse(h0)
        cofactor = self.relation_cofactor(a, t1, h1)
        beta = self._phi(t0) * h0 - cofactor * h0_inv * self._phi(2 * a - self.P - t0)
        return min(a, e0, self.A.valuation(beta))

    def printed_type5(self, a, t0, t1, h0, h1) -> int:
        h0, h1 = self._unit(h0, "h0"), self._unit(h1, "h1")
        self._check_type5(a, t0, t1, h0, h1)
        if h0 is None or a < self.kernel_exponent(a, t0):
            return 0
        return min(a, self.A.valuation(self._printed_beta(a, t0, t1, h0, h1)))

    def _printed_beta(self, a, t0, t1, h0, h1) -> galois.Poly:
        h0_inv = self.A.inverse(h0)
        beta = self._phi(t0) * h0 - h0_inv * self._phi(2 * a - self.P - t0)
        if h1 is not None:
            beta = beta - h1 * h0_inv * self._phi(a + t1 - t0)
        return beta

    # ------------------------------------------------------------------ type 7

    def _check_type7(self, a, b, t0, t1, t2, h0, h1, h2) -> None:
        self._check_range("a", a, 1, self.P)
        self._check_range("b", b, 0, a)
        if h0 is not None:
            self._check_range("t0", t0, 0, b)
        if h1 is not None:
            self._check_range("t1", t1, 0, a)
        if h2 is not None:
            self._check_range("t2", t2, 0, b)

    def in_unstated_region(self, a: int, b: int, t0: int, h0: Optional[galois.Poly]) -> bool:
        """b < p^s - a + t0 <= a with h0 a unit; L is 0 there by the level-1 argument."""
        if self._unit(h0, "h0") is None:
            return False
        e0 = self.kernel_exponent(a, t0)
        return b < e0 <= a

    def type7(
        self,
        a: int,
        b: int,
        t0: int,
        t1: int,
        t2: int,
        h0: Optional[galois.Poly],
        h1: Optional[galois.Poly],
        h2: Optional[galois.Poly],
    ) -> int:
        """Smallest u^2 exponent of <g1, g2>."""
        h0, h1, h2 = self._unit(h0, "h0"), self._unit(h1, "h1"), self._unit(h2, "h2")
        self._check_type7(a, b, t0, t1, t2, h0, h1, h2)
        e0 = self.kernel_exponent(a, t0)
        if h0 is None or b < e0:
            return 0

        h0_inv = self.A.inverse(h0)
        cofactor = self.relation_cofactor(a, t1, h1)
        # u g1 - phi^(a-b) g2
        beta1 = self._phi(t0) * h0
        # phi^(b - t0) g1 with its level-1 part cancelled by g2, scaled by -h0^-1
        beta2 = -(cofactor * h0_inv * self._phi(a + b - self.P - t0))
        candidates = [b]
        if h2 is not None:
            beta1 = beta1 - self._phi(a - b + t2) * h2
            beta2 = beta2 + self._phi(t2) * h2
            candidates.append(self.P - b + t2)
        candidates += [self.A.valuation(beta1), self.A.valuation(beta2)]
        return min(candidates)

    def printed_type7(self, a, b, t0, t1, t2, h0, h1, h2) -> int:
        h0, h1, h2 = self._unit(h0, "h0"), self._unit(h1, "h1"), self._unit(h2, "h2")
        self._check_type7(a, b, t0, t1, t2, h0, h1, h2)
        e0 = self.kernel_exponent(a, t0)
        if h0 is None or a < e0 or b < e0:
            return 0
        h0_inv = self.A.inverse(h0)
        beta1 = self._printed_beta(a, t0, t1, h0, h1)
        beta2 = -self._phi(a + b - self.P - t0) * h0_inv
        if h2 is not None:
            beta2 = beta2 + self._phi(t2) * h2
        if h1 is not None:
            beta2 = beta2 - self._phi(b + t1 - t0) * h1 * h0_inv
        return min(b, self.A.valuation(beta1), self.A.valuation(beta2))

    # ------------------------------------------------------------------ concrete generators

    def generator_g1(self, a, t0, t1, h0, h1) -> QuotElement:
        ring = self.ring
        g = ring.from_poly(self._phi(a))
        if self._unit(h0, "h0") is not None:
            g = g + ring.from_poly(self._phi(t0) * h0, level=1)
        if self._unit(h1, "h1") is not None:
            g = g + ring.from_poly(self._phi(t1) * h1, level=2)
        return g

    def generator_g2(self, b, t2, h2) -> QuotElement:
        ring = self.ring
        g = ring.from_poly(self._phi(b), level=1)
        if self._unit(h2, "h2") is not None:
            g = g + ring.from_poly(self._phi(t2) * h2, level=2)
        return g

    def sample_units(self) -> List[Optional[galois.Poly]]:
        """None, 1, every nonzero constant, and 1 + phi (a unit with a phi-part)."""
        field = self.ring.field
        units: List[Optional[galois.Poly]] = [None]
        for c in field.elements()[1:]:
            units.append(field.constant_poly(c))
        units.append(self.A.one + self.ring.phi)
        return units


@lru_cache(maxsize=32)
def lemmas_for(ring: RingContext) -> ParameterLemmas:
    return ParameterLemmas(ring)


def closed_form_L_type3(ring: RingContext, a: int, t: int, h: Optional[galois.Poly]) -> int:
    """min(a, p^s - a + t) for <u phi^a + u^2 phi^t h>; a when h is absent.

    The census asserts this value against the ideal's own L.
    """
    return lemmas_for(ring).type3(a, t, h)


def closed_form_L_type5(
    ring: RingContext,
    a: int,
    t0: int,
    t1: int,
    h0: Optional[galois.Poly],
    h1: Optional[galois.Poly],
) -> int:
    """Exact L of <g1>: min(a, e0, v(beta)) with e0 = p^s - a + t0.

    beta = phi^t0 h0 - W h0^-1 phi^(2a - p^s - t0), W the relation cofactor
    w + phi^(p^s - a + t1) h1. This is the value the census asserts. The
    printed form drops e0 and uses w = 1; ``ParameterLemmas.printed_type5``
    evaluates it and its disagreements are reported as informational only.
    """
    return lemmas_for(ring).type5(a, t0, t1, h0, h1)


def closed_form_L_type7(
    ring: RingContext,
    a: int,
    b: int,
    t0: int,
    t1: int,
    t2: int,
    h0: Optional[galois.Poly],
    h1: Optional[galois.Poly],
    h2: Optional[galois.Poly],
) -> int:
    """Exact L of <g1, g2>: 0 when h0 is absent or b < e0, else the minimum of
    b, p^s - b + t2 (h2 present), and the valuations of the two u^2 carries.

    The carries use the relation cofactor W rather than w = 1. The census
    asserts this value; ``ParameterLemmas.printed_type7`` omits the
    p^s - b + t2 term and W, and is compared as informational only.
    """
    return lemmas_for(ring).type7(a, b, t0, t1, t2, h0, h1, h2)

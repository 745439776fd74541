"""Generator types of ideals in the t = 3 family and the chain predicate."""

from dataclasses import dataclass, field
from enum import IntEnum
from typing import List, Optional, Tuple

import galois

from src.config import get_settings
from src.exceptions import ClassificationFailure, ParadoxError, UnsupportedParameter
from src.field import is_zero_poly
from src.ideals import Ideal, iter_principal_bases, smallest_u_level_exponent, span
from src.logger import get_logger
from src.models import TorsionProfile, TypeParameters
from src.parameters import require_t3_family
from src.quotient_ring import QuotElement, RingContext

logger = get_logger(__name__)


class TypeTag(IntEnum):
    TRIVIAL = 1
    TOP_LEVEL = 2
    ONE_GENERATOR_LEVEL_ONE = 3
    TWO_GENERATORS_LEVEL_ONE = 4
    ONE_GENERATOR = 5
    WITH_TOP_LEVEL = 6
    WITH_LEVEL_ONE = 7
    THREE_GENERATORS = 8


@dataclass
class IdealType:
    """Tag, parameters and reconstructed generators of a t = 3 ideal.

    Unused parameters stay None; h-values are None when the cofactor is zero.
    """

    tag: int
    a: Optional[int] = None
    b: Optional[int] = None
    c: Optional[int] = None
    t0: Optional[int] = None
    t1: Optional[int] = None
    t2: Optional[int] = None
    h0: Optional[galois.Poly] = None
    h1: Optional[galois.Poly] = None
    h2: Optional[galois.Poly] = None
    L: Optional[int] = None
    M: Optional[int] = None
    whole: bool = False
    generators: List[QuotElement] = field(default_factory=list)

    def params(self) -> TypeParameters:
        return TypeParameters(
            a=self.a, b=self.b, c=self.c, t0=self.t0, t1=self.t1, t2=self.t2, L=self.L, M=self.M
        )


def level_split(a: QuotElement, level: int) -> Tuple[int, Optional[galois.Poly]]:
    """(v, h) with the u^level part of a equal to phi^v h; (0, None) for a zero part."""
    ring = a.ring
    v = ring.level_valuation(a, level)
    if v >= ring.P:
        return 0, None
    quotient, remainder = divmod(ring.level_poly(a, level), ring.phi**v)
    if not is_zero_poly(remainder):
        raise ParadoxError(f"phi^{v} does not divide the u^{level} part of {a}")
    return v, quotient


def classify_t3(ideal: Ideal) -> IdealType:
    """Read the generator type off the torsional degrees and the echelon basis."""
    ring = ideal.ring
    require_t3_family(ring)

    if ideal.is_zero():
        result = IdealType(tag=TypeTag.TRIVIAL)
    elif ideal.is_whole():
        result = IdealType(tag=TypeTag.TRIVIAL, whole=True, generators=[ring.one])
    else:
        result = _classify_proper(ideal, ideal.torsions())

    if span(ring, result.generators) != ideal:
        raise ClassificationFailure(
            f"type {result.tag} generators {[str(g) for g in result.generators]} "
            f"do not span the ideal of dimension {ideal.dim}"
        )
    return result


def _classify_proper(ideal: Ideal, T: List[int]) -> IdealType:
    ring = ideal.ring
    P = ring.P

    if T[0] == P:
        if T[1] == P:
            return IdealType(
                tag=TypeTag.TOP_LEVEL, a=T[2], generators=[ring.basis_element(2, T[2], 0)]
            )
        g2 = _pivot_row(ideal, 1, T[1])
        t, h = level_split(g2, 2)
        principal = span(ring, [g2])
        if principal == ideal:
            return IdealType(
                tag=TypeTag.ONE_GENERATOR_LEVEL_ONE, a=T[1], t0=t, h0=h, L=T[2], generators=[g2]
            )
        return IdealType(
            tag=TypeTag.TWO_GENERATORS_LEVEL_ONE,
            a=T[1],
            b=T[2],
            t0=t,
            h0=h,
            L=smallest_u_level_exponent(principal, 2),
            generators=[g2, ring.basis_element(2, T[2], 0)],
        )

    a = T[0]
    g1 = _pivot_row(ideal, 0, a)
    t0, h0 = level_split(g1, 1)
    t1, h1 = level_split(g1, 2)
    g3 = ring.basis_element(2, T[2], 0)
    common = dict(a=a, t0=t0, t1=t1, h0=h0, h1=h1)

    first = span(ring, [g1])
    if first == ideal:
        return IdealType(tag=TypeTag.ONE_GENERATOR, L=T[1], M=T[2], generators=[g1], **common)

    if span(ring, [g1, g3]) == ideal:
        return IdealType(
            tag=TypeTag.WITH_TOP_LEVEL,
            b=T[2],
            L=smallest_u_level_exponent(first, 2),
            M=smallest_u_level_exponent(first, 1),
            generators=[g1, g3],
            **common,
        )

    g2 = _pivot_row(ideal, 1, T[1])
    t2, h2 = level_split(g2, 2)
    pair = span(ring, [g1, g2])
    if pair == ideal:
        return IdealType(
            tag=TypeTag.WITH_LEVEL_ONE,
            b=T[1],
            t2=t2,
            h2=h2,
            L=smallest_u_level_exponent(first, 1),
            M=T[2],
            generators=[g1, g2],
            **common,
        )
    return IdealType(
        tag=TypeTag.THREE_GENERATORS,
        b=T[1],
        c=T[2],
        t2=t2,
        h2=h2,
        L=smallest_u_level_exponent(first, 1),
        M=smallest_u_level_exponent(pair, 2),
        generators=[g1, g2, g3],
        **common,
    )


def _pivot_row(ideal: Ideal, level: int, exponent: int) -> QuotElement:
    row = ideal.row_with_pivot(level, exponent, 0)
    if row is None:
        raise ClassificationFailure(
            f"no basis row leads with u^{level} phi^{exponent} although T_{level} = {exponent}"
        )
    return row


def torsions_from_type(kind: IdealType, P: int) -> TorsionProfile:
    """(T_0, T_1, T_2) predicted by the type parameters."""
    tag = kind.tag
    if tag == TypeTag.TRIVIAL:
        degrees = (0, 0, 0) if kind.whole else (P, P, P)
    elif tag == TypeTag.TOP_LEVEL:
        degrees = (P, P, kind.a)
    elif tag == TypeTag.ONE_GENERATOR_LEVEL_ONE:
        degrees = (P, kind.a, kind.L)
    elif tag == TypeTag.TWO_GENERATORS_LEVEL_ONE:
        degrees = (P, kind.a, kind.b)
    elif tag == TypeTag.ONE_GENERATOR:
        degrees = (kind.a, kind.L, kind.M)
    elif tag == TypeTag.WITH_TOP_LEVEL:
        degrees = (kind.a, kind.M, kind.b)
    elif tag == TypeTag.WITH_LEVEL_ONE:
        degrees = (kind.a, kind.b, kind.M)
    else:
        degrees = (kind.a, kind.b, kind.c)
    return TorsionProfile(T0=degrees[0], T1=degrees[1], T2=degrees[2])


def cardinality_from_type(kind: IdealType, ring: RingContext) -> int:
    """Exponent e with |I| = p^e, from the type parameters alone."""
    return ring.m * ring.D * (3 * ring.P - torsions_from_type(kind, ring.P).total)


@dataclass
class ChainVerdict:
    """Outcome of the chain predicate with its certificate."""

    is_chain: bool
    chain: List[Ideal] = field(default_factory=list)
    card_exponents: List[int] = field(default_factory=list)
    witness: Optional[Ideal] = None
    witness_scanned: bool = False


def _certified_chain(ring: RingContext, generator: QuotElement, length: int) -> ChainVerdict:
    """<g^0> > <g^1> > ... > <g^length> with |<g^i>| = p^(m D (length - i))."""
    chain, exponents = [], []
    power = ring.one
    for i in range(length + 1):
        ideal = span(ring, [power])
        expected = ring.m * ring.D * (length - i)
        if ideal.cardinality_exponent() != expected:
            raise ParadoxError(
                f"|<{generator}^{i}>| = p^{ideal.cardinality_exponent()}, expected p^{expected}"
            )
        if chain and not ideal.is_subideal_of(chain[-1]):
            raise ParadoxError(f"<{generator}^{i}> is not inside <{generator}^{i - 1}>")
        chain.append(ideal)
        exponents.append(expected)
        power = power * generator
    return ChainVerdict(True, chain, exponents)


def predicts_chain(ring: RingContext) -> Optional[bool]:
    """Chain verdict from the ring constants alone; None when phi is reducible."""
    if not ring.phi_irreducible:
        return None
    return ring.P == 1 or ring.t == 1 or ring.k == 1


def chain_check(ring: RingContext) -> ChainVerdict:
    """Decide whether the ideals form a chain and certify the answer."""
    if not ring.phi_irreducible:
        raise UnsupportedParameter("the chain predicate needs an irreducible phi")

    # phi lies in <u> when p^s = 1, so the ideals are the powers of u
    if ring.P == 1:
        return _certified_chain(ring, ring.u, ring.t)
    if ring.t == 1 or ring.k == 1:
        return _certified_chain(ring, ring.phi_element, ring.t * ring.P)

    u, phi = ring.u, ring.phi_element
    if span(ring, [phi]).contains(u) or span(ring, [u]).contains(phi):
        raise ParadoxError("u and phi generate comparable ideals in a non-chain ring")
    witness = span(ring, [u, phi])

    scanned = False
    if ring.all_elements_count() <= get_settings().enumeration_cap:
        for basis in iter_principal_bases(ring):
            if basis.shape == witness.basis.shape and bool((basis == witness.basis).all()):
                raise ParadoxError("<u, phi> turned out to be principal")
        scanned = True

    logger.debug("Chain predicate", is_chain=False, witness_dim=witness.dim, scanned=scanned)
    return ChainVerdict(False, witness=witness, witness_scanned=scanned)

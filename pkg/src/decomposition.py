"""Chinese remainder splittings of x^(n p^s) - delta for n = 2 and n = 3."""

from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Sequence, Tuple

import galois
import numpy as np

from src.chain_ring import ChainRingElement, is_nth_power_chain, nth_root_lift
from src.exceptions import InvalidInput, ParadoxError, UnsupportedParameter
from src.ideals import Ideal, span
from src.logger import get_logger
from src.quotient_ring import ModulusKind, ModulusSpec, QuotElement, RingContext

logger = get_logger(__name__)


class SplitCase(str, Enum):
    SQUARE = "square"
    NON_SQUARE = "non_square"
    CUBE_1_MOD_3 = "cube_1_mod_3"
    CUBE_2_MOD_3 = "cube_2_mod_3"
    NON_CUBE = "non_cube"


@dataclass
class SplitPlan:
    """How the modulus factors over R^t, with the data that certifies it."""

    case: SplitCase
    factors: List[ModulusSpec] = field(default_factory=list)
    delta_tilde: Optional[ChainRingElement] = None
    b: Optional[galois.FieldArray] = None
    c: Optional[galois.FieldArray] = None

    @property
    def splits(self) -> bool:
        return len(self.factors) > 1


def _poly_mul(
    f: Sequence[ChainRingElement], g: Sequence[ChainRingElement]
) -> List[ChainRingElement]:
    ring = f[0].ring
    out = [ring.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] = out[i + j] + a * b
    return out


def factors_multiply_back(ring: RingContext, factors: Sequence[ModulusSpec]) -> bool:
    """The product of the factor moduli in y = x^(p^s) equals the ring modulus."""
    product = factors[0].coefficients()
    for spec in factors[1:]:
        product = _poly_mul(product, spec.coefficients())
    return product == ring.f_coeffs


def plan_split(ring: RingContext) -> SplitPlan:
    """Decide the square or cube case and list the component moduli."""
    spec = ring.spec
    if spec.kind is not ModulusKind.CONSTACYCLIC or spec.n not in (2, 3):
        raise UnsupportedParameter(
            f"splitting is defined for x^(n p^s) - delta with n in (2, 3), got {spec.describe()}"
        )
    if spec.n == 2 and ring.p == 2:
        raise UnsupportedParameter("n = 2 needs an odd characteristic")

    field_ctx = ring.field
    delta = spec.delta

    if not is_nth_power_chain(delta, spec.n):
        if not ring.phi_irreducible:
            raise ParadoxError(f"phi = {ring.phi} is reducible although delta is not a power")
        case = SplitCase.NON_SQUARE if spec.n == 2 else SplitCase.NON_CUBE
        return SplitPlan(case)

    root = nth_root_lift(delta, spec.n)
    if spec.n == 2:
        plan = SplitPlan(
            SplitCase.SQUARE,
            [ModulusSpec.constacyclic(1, root), ModulusSpec.constacyclic(1, -root)],
            delta_tilde=root,
        )
    elif field_ctx.order % 3 == 1:
        b, c = field_ctx.roots_of_unity(3)
        plan = SplitPlan(
            SplitCase.CUBE_1_MOD_3,
            [
                ModulusSpec.constacyclic(1, root),
                ModulusSpec.constacyclic(1, root.scale(b)),
                ModulusSpec.constacyclic(1, root.scale(c)),
            ],
            delta_tilde=root,
            b=b,
            c=c,
        )
        if b * c != 1 or b + c != field_ctx.scalar(-1):
            raise ParadoxError("cube roots of unity violate bc = 1, b + c = -1")
    else:
        plan = SplitPlan(
            SplitCase.CUBE_2_MOD_3,
            [ModulusSpec.constacyclic(1, root), ModulusSpec.quadratic_trace(root)],
            delta_tilde=root,
        )

    if not factors_multiply_back(ring, plan.factors):
        raise ParadoxError(f"split factors do not multiply back to {spec.describe()}")
    logger.debug("Planned split", case=plan.case.value, delta_tilde=str(root))
    return plan


class CrtSplit:
    """The isomorphism R^t[x]/<f> -> prod_j R^t[x]/<f_j> and its inverse."""

    def __init__(self, ring: RingContext, plan: Optional[SplitPlan] = None):
        plan = plan or plan_split(ring)
        if not plan.splits:
            raise InvalidInput(f"{plan.case.value} plan has no coprime factors")
        self.ring = ring
        self.plan = plan
        self.components = [RingContext(ring.s, spec) for spec in plan.factors]
        self._forward = [self._forward_matrix(comp) for comp in self.components]
        self._lift = [self._lift_matrix(comp) for comp in self.components]
        self.idempotents = self._idempotents()
        self._backward = [
            lift @ ring.mul_matrix(e) for lift, e in zip(self._lift, self.idempotents)
        ]

    # ------------------------------------------------------------------ matrices

    def _forward_matrix(self, comp: RingContext) -> galois.FieldArray:
        """Rows: images of the big ring's canonical basis in the component."""
        big = self.ring
        images = comp.field.GF.Zeros((big.dim, comp.dim))
        for k in range(big.t):
            current = comp.basis_element(k, 0, 0).coords
            for e in range(big.N):
                images[k * big.N + e] = current
                current = current @ comp.X
        return big._to_std @ images

    def _lift_matrix(self, comp: RingContext) -> galois.FieldArray:
        """Component canonical coordinates to a big-ring element of the same standard form."""
        big = self.ring
        embed = big.field.GF.Zeros((comp.dim, big.dim))
        for k in range(comp.t):
            for e in range(comp.N):
                embed[k * comp.N + e, k * big.N + e] = 1
        return comp._to_std @ embed @ big._from_std

    def _idempotents(self) -> List[QuotElement]:
        big = self.ring
        residues = [
            self._residue_poly(spec) for spec in self.plan.factors
        ]
        idempotents = []
        for j, fj in enumerate(residues):
            others = galois.Poly.One(big.field.GF)
            for i, fi in enumerate(residues):
                if i != j:
                    others = others * fi
            d, _, t = galois.egcd(fj, others)
            if d != galois.Poly.One(big.field.GF):
                raise ParadoxError("split factors are not coprime modulo u")
            e = big.from_poly(t * others)
            for _ in range(big.t + 1):
                if e * e == e:
                    break
                e2 = e * e
                e = e2.scale(big.field.scalar(3)) - (e2 * e).scale(big.field.scalar(2))
            if e * e != e:
                raise ParadoxError("idempotent lift did not converge")
            idempotents.append(e)

        total = big.zero
        for e in idempotents:
            total = total + e
        if total != big.one:
            raise ParadoxError("lifted idempotents do not sum to 1")
        return idempotents

    def _residue_poly(self, spec: ModulusSpec) -> galois.Poly:
        """The factor modulo u, as a polynomial in x."""
        field_ctx = self.ring.field
        coeffs = spec.coefficients()
        poly = galois.Poly.Zero(field_ctx.GF)
        y = field_ctx.x() ** self.ring.P
        for c in reversed(coeffs):
            poly = poly * y + field_ctx.constant_poly(c.parts[0])
        return poly

    # ------------------------------------------------------------------ maps

    def forward(self, a: QuotElement) -> Tuple[QuotElement, ...]:
        if a.ring is not self.ring:
            raise InvalidInput("element does not belong to the split ring")
        return tuple(
            QuotElement(comp, a.coords @ matrix)
            for comp, matrix in zip(self.components, self._forward)
        )

    def backward(self, parts: Sequence[QuotElement]) -> QuotElement:
        if len(parts) != len(self.components) or any(
            part.ring is not comp for part, comp in zip(parts, self.components)
        ):
            raise InvalidInput("component tuple does not match the split plan")
        coords = self.ring.field.GF.Zeros(self.ring.dim)
        for part, matrix in zip(parts, self._backward):
            coords = coords + part.coords @ matrix
        return QuotElement(self.ring, coords)

    def embed(self, j: int, part: QuotElement) -> QuotElement:
        """The element equal to part in component j and zero elsewhere."""
        if part.ring is not self.components[j]:
            raise InvalidInput(f"element does not belong to component {j}")
        return QuotElement(self.ring, part.coords @ self._backward[j])

    def ideal_product(self, parts: Sequence[Ideal]) -> Ideal:
        """The ideal I_1 x ... x I_r pulled back to the split ring."""
        if len(parts) != len(self.components) or any(
            ideal.ring is not comp for ideal, comp in zip(parts, self.components)
        ):
            raise InvalidInput("component ideals do not match the split plan")
        gens = [
            self.embed(j, row)
            for j, ideal in enumerate(parts)
            for row in ideal.elements_of_basis()
        ]
        result = span(self.ring, gens)
        expected = sum(ideal.cardinality_exponent() for ideal in parts)
        if result.cardinality_exponent() != expected:
            raise ParadoxError(
                f"|product| = p^{result.cardinality_exponent()}, components give p^{expected}"
            )
        return result

    def split_ideal(self, ideal: Ideal) -> Tuple[Ideal, ...]:
        """Images of an ideal in every component."""
        if ideal.ring is not self.ring:
            raise InvalidInput("ideal does not belong to the split ring")
        images = []
        for comp, matrix in zip(self.components, self._forward):
            rows = ideal.basis @ matrix
            images.append(span(comp, [QuotElement(comp, row.copy()) for row in rows]))
        return tuple(images)

    def idempotent_coords(self) -> List[List[int]]:
        return [[int(c) for c in e.coords] for e in self.idempotents]


def crt_forward(split: CrtSplit, a: QuotElement) -> Tuple[QuotElement, ...]:
    return split.forward(a)


def crt_backward(split: CrtSplit, parts: Sequence[QuotElement]) -> QuotElement:
    return split.backward(parts)


def ideal_product(split: CrtSplit, parts: Sequence[Ideal]) -> Ideal:
    return split.ideal_product(parts)


def sample_elements(ring: RingContext, count: int, seed: int) -> List[QuotElement]:
    """Deterministic pseudo-random elements for spot checks."""
    rng = np.random.default_rng(seed)
    values = rng.integers(0, ring.field.order, size=(count, ring.dim))
    return [QuotElement(ring, ring.field.GF(row)) for row in values]

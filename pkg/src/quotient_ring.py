"""Quotient rings R^t[x]/<f(x)> with f in R^t[x^(p^s)].

Two moduli are supported:

* constacyclic, f = x^(n p^s) - delta with delta a unit of R^t;
* quadratic trace, f = x^(2 p^s) + d x^(p^s) + d^2 with d a unit of R^t.

Elements are stored in canonical coordinates: the coefficient c[k, j, i] of
u^k * phi^j * x^i with 0 <= k < t, 0 <= j < p^s, 0 <= i < deg(phi), flattened
k-major. Multiplication uses a precomputed tensor of multiplication matrices
acting on row vectors, so ``b.coords @ ring.mul_matrix(a)`` is ``a*b``.
"""

import math
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Dict, List, Optional, Sequence

import galois
import numpy as np

from src.chain_ring import ChainRing, ChainRingElement
from src.config import get_settings
from src.exceptions import (
    DivisionByZero,
    InvalidInput,
    NotAUnit,
    ParadoxError,
    UnsupportedParameter,
)
from src.field import FieldContext, is_zero_poly
from src.logger import get_logger

logger = get_logger(__name__)


class ModulusKind(str, Enum):
    """Shape of the quotient modulus."""

    CONSTACYCLIC = "constacyclic"
    QUADRATIC_TRACE = "quadratic_trace"


@dataclass(frozen=True)
class ModulusSpec:
    """The modulus f(x) = sum_i f_i x^(i p^s) before s is fixed."""

    kind: ModulusKind
    delta: ChainRingElement
    n: int = 1

    @classmethod
    def constacyclic(cls, n: int, delta: ChainRingElement) -> "ModulusSpec":
        return cls(ModulusKind.CONSTACYCLIC, delta, n)

    @classmethod
    def quadratic_trace(cls, delta_tilde: ChainRingElement) -> "ModulusSpec":
        return cls(ModulusKind.QUADRATIC_TRACE, delta_tilde, 2)

    @property
    def base_degree(self) -> int:
        return self.n

    def coefficients(self) -> List[ChainRingElement]:
        """f_0, ..., f_D with f_D = 1."""
        chain = self.delta.ring
        if self.kind is ModulusKind.CONSTACYCLIC:
            coeffs = [chain.zero] * (self.n + 1)
            coeffs[0] = -self.delta
        else:
            coeffs = [self.delta * self.delta, self.delta, chain.zero]
        coeffs[-1] = chain.one
        return coeffs

    def describe(self) -> str:
        if self.kind is ModulusKind.CONSTACYCLIC:
            return f"x^({self.n}p^s) - ({self.delta})"
        return f"x^(2p^s) + ({self.delta}) x^(p^s) + ({self.delta})^2"


class RingContext:
    """R^t[x]/<f(x)> with its canonical basis and multiplication tables."""

    def __init__(self, s: int, spec: ModulusSpec, verify: Optional[bool] = None):
        chain = spec.delta.ring
        field = chain.field

        if not isinstance(s, int) or s < 0:
            raise InvalidInput(f"s must be a non-negative integer, got {s!r}")
        if spec.n < 1:
            raise InvalidInput(f"n must be positive, got {spec.n}")
        # for the quadratic-trace modulus n is the base degree 2, not a length
        if spec.kind is ModulusKind.CONSTACYCLIC and math.gcd(spec.n, field.p) != 1:
            raise UnsupportedParameter(f"gcd(n={spec.n}, p={field.p}) != 1")
        if spec.kind is ModulusKind.QUADRATIC_TRACE and field.p == 3:
            raise UnsupportedParameter("the quadratic-trace modulus needs p != 3")
        if not spec.delta.is_unit():
            raise NotAUnit(f"ring constant {spec.delta} is not a unit")

        self.field: FieldContext = field
        self.chain: ChainRing = chain
        self.spec = spec
        self.p = field.p
        self.m = field.m
        self.s = s
        self.t = chain.t
        self.P = self.p**s
        self.D = spec.base_degree
        self.N = self.D * self.P
        self.dim = self.t * self.N

        self.f_coeffs = spec.coefficients()
        self.phi = field.poly(
            [field.ps_root(c.parts[0], s) for c in self.f_coeffs]
        )
        self.delta00 = field.ps_root(spec.delta.parts[0], s)
        self.k = self._first_u_level()
        if self.k is None:
            self.nilp_index = self.P
        else:
            self.nilp_index = -(-self.t // self.k) * self.P
        self.phi_irreducible = bool(self.phi.is_irreducible())

        self._build_bases()
        self._build_shift_matrices()

        if verify is None:
            verify = self.dim <= get_settings().dim_cap
        if verify:
            self.verify_invariants()

        logger.debug(
            "Ring constructed",
            p=self.p,
            m=self.m,
            s=s,
            t=self.t,
            kind=spec.kind.value,
            dim=self.dim,
            k=self.k,
            nilp_index=self.nilp_index,
        )

    # ------------------------------------------------------------------ setup

    def _first_u_level(self) -> Optional[int]:
        for level in range(1, self.t):
            if any(c.parts[level] != 0 for c in self.f_coeffs[:-1]):
                return level
        return None

    def _build_bases(self) -> None:
        """Change of basis between standard monomials u^k x^e and u^k phi^j x^i."""
        GF = self.field.GF
        x = self.field.x()
        block = GF.Zeros((self.N, self.N))
        phi_power = galois.Poly.One(GF)
        for j in range(self.P):
            for i in range(self.D):
                coeffs = (phi_power * x**i).coeffs[::-1]
                block[j * self.D + i, : coeffs.size] = coeffs
            phi_power = phi_power * self.phi
        block_inv = np.linalg.inv(block)

        self._to_std = GF.Zeros((self.dim, self.dim))
        self._from_std = GF.Zeros((self.dim, self.dim))
        for k in range(self.t):
            window = slice(k * self.N, (k + 1) * self.N)
            self._to_std[window, window] = block
            self._from_std[window, window] = block_inv

    def _build_shift_matrices(self) -> None:
        """Multiplication by x and by u, as row-vector matrices in canonical coordinates."""
        GF = self.field.GF
        x_std = GF.Zeros((self.dim, self.dim))
        u_std = GF.Zeros((self.dim, self.dim))
        for k in range(self.t):
            for e in range(self.N):
                row = k * self.N + e
                if e + 1 < self.N:
                    x_std[row, row + 1] = 1
                else:
                    # u^k x^N = -sum_i sum_l u^(k+l) f_(i,l) x^(i p^s)
                    for i, coeff in enumerate(self.f_coeffs[:-1]):
                        for level in range(self.t - k):
                            col = (k + level) * self.N + i * self.P
                            x_std[row, col] -= coeff.parts[level]
                if k + 1 < self.t:
                    u_std[row, row + self.N] = 1

        self.X = self._to_std @ x_std @ self._from_std
        self.U = self._to_std @ u_std @ self._from_std

    @cached_property
    def phi_matrix(self) -> galois.FieldArray:
        return self.eval_matrix(self.phi)

    def eval_matrix(self, f: galois.Poly) -> galois.FieldArray:
        """The multiplication matrix of f(x), by Horner's rule."""
        GF = self.field.GF
        result = GF.Zeros((self.dim, self.dim))
        identity = GF.Identity(self.dim)
        for c in f.coeffs:
            result = result @ self.X + identity * c
        return result

    @cached_property
    def tensor(self) -> galois.FieldArray:
        """T[b] is the multiplication matrix of canonical basis element b."""
        GF = self.field.GF
        identity = GF.Identity(self.dim)
        x_pows = [identity]
        for _ in range(1, self.D):
            x_pows.append(x_pows[-1] @ self.X)
        phi_pows = [identity]
        for _ in range(1, self.P):
            phi_pows.append(phi_pows[-1] @ self.phi_matrix)
        u_pows = [identity]
        for _ in range(1, self.t):
            u_pows.append(u_pows[-1] @ self.U)

        tensor = GF.Zeros((self.dim, self.dim, self.dim))
        for k in range(self.t):
            for j in range(self.P):
                level_phi = u_pows[k] @ phi_pows[j]
                for i in range(self.D):
                    tensor[self.index(k, j, i)] = level_phi @ x_pows[i]
        return tensor

    # ------------------------------------------------------------------ coordinates

    def index(self, k: int, j: int, i: int) -> int:
        return k * self.N + j * self.D + i

    def level_slice(self, k: int) -> slice:
        return slice(k * self.N, (k + 1) * self.N)

    def mul_matrix(self, a: "QuotElement") -> galois.FieldArray:
        self._check(a)
        return self.mul_matrices(a.coords[np.newaxis, :])[0]

    def mul_matrices(self, rows: galois.FieldArray) -> galois.FieldArray:
        """Multiplication matrices for a batch of canonical coordinate rows."""
        flat = self.tensor.reshape(self.dim, self.dim * self.dim)
        return (rows @ flat).reshape(rows.shape[0], self.dim, self.dim)

    def _check(self, a: "QuotElement") -> None:
        if not isinstance(a, QuotElement) or a.ring is not self:
            raise InvalidInput("element belongs to a different ring")

    # ------------------------------------------------------------------ elements

    def element(self, coords) -> "QuotElement":
        """Element from canonical coordinates (flat or nested [k][j][i])."""
        GF = self.field.GF
        if isinstance(coords, galois.FieldArray):
            values = coords.reshape(-1)
        else:
            array = np.asarray(coords, dtype=object)
            if array.ndim == 4 and array.shape[:3] == (self.t, self.P, self.D):
                flat = [
                    int(self.field.element(list(d)))
                    for d in array.reshape(self.dim, array.shape[3])
                ]
            else:
                flat = [int(self.field.element(c)) for c in array.reshape(-1)]
            values = GF(flat)
        if values.size != self.dim:
            raise InvalidInput(f"expected {self.dim} coordinates, got {values.size}")
        return QuotElement(self, values.copy())

    @property
    def zero(self) -> "QuotElement":
        return QuotElement(self, self.field.GF.Zeros(self.dim))

    @property
    def one(self) -> "QuotElement":
        return self.basis_element(0, 0, 0)

    def basis_element(self, k: int, j: int, i: int) -> "QuotElement":
        """u^k phi^j x^i for indices inside the canonical ranges."""
        if not (0 <= k < self.t and 0 <= j < self.P and 0 <= i < self.D):
            raise InvalidInput(f"({k}, {j}, {i}) outside the canonical index ranges")
        coords = self.field.GF.Zeros(self.dim)
        coords[self.index(k, j, i)] = 1
        return QuotElement(self, coords)

    @property
    def u(self) -> "QuotElement":
        return self.basis_element(1, 0, 0) if self.t > 1 else self.zero

    @property
    def x(self) -> "QuotElement":
        return self.from_poly(self.field.x())

    @property
    def phi_element(self) -> "QuotElement":
        return self.from_poly(self.phi)

    def scalar(self, c) -> "QuotElement":
        return self.one.scale(self.field.element(c))

    def from_chain(self, c: ChainRingElement) -> "QuotElement":
        if c.ring != self.chain:
            raise InvalidInput("chain ring element from a different R^t")
        coords = self.field.GF.Zeros(self.dim)
        for level in range(self.t):
            coords[self.index(level, 0, 0)] = c.parts[level]
        return QuotElement(self, coords)

    def from_standard(self, std: galois.FieldArray) -> "QuotElement":
        return QuotElement(self, std @ self._from_std)

    def to_standard(self, a: "QuotElement") -> galois.FieldArray:
        self._check(a)
        return a.coords @ self._to_std

    def from_poly(self, f: galois.Poly, level: int = 0) -> "QuotElement":
        """u^level * f(x) for a polynomial over F_{p^m} of any degree."""
        if not 0 <= level < self.t:
            return self.zero
        GF = self.field.GF
        if f.degree < self.N:
            std = GF.Zeros(self.dim)
            coeffs = f.coeffs[::-1]
            std[level * self.N : level * self.N + coeffs.size] = coeffs
            return self.from_standard(std)
        vector = GF.Zeros(self.dim)
        for c in f.coeffs:
            vector = vector @ self.X
            vector[0] += c
        for _ in range(level):
            vector = vector @ self.U
        return QuotElement(self, vector)

    def monomial(self, k: int, e: int) -> "QuotElement":
        """u^k x^e."""
        return self.from_poly(self.field.x() ** e, level=k)

    def level_poly(self, a: "QuotElement", k: int) -> galois.Poly:
        """The u^k-coefficient of a as a polynomial of degree < deg f."""
        std = self.to_standard(a)[self.level_slice(k)]
        return galois.Poly(std, order="asc")

    def level_valuation(self, a: "QuotElement", k: int) -> int:
        """phi-valuation of the u^k part; p^s when the part is zero."""
        block = a.coords[self.level_slice(k)].reshape(self.P, self.D)
        nonzero = np.flatnonzero(np.any(block != 0, axis=1))
        return int(nonzero[0]) if nonzero.size else self.P

    def all_elements_count(self) -> int:
        return self.field.order**self.dim

    # ------------------------------------------------------------------ invariants

    @cached_property
    def phi_power(self) -> "QuotElement":
        """phi^(p^s) in the quotient."""
        return self.phi_element ** self.P

    def relation_unit(self) -> galois.Poly:
        """w with phi^(p^s) = u^k w, read off at u-level k."""
        if self.k is None:
            raise UnsupportedParameter("phi^(p^s) = 0 when the ring constant has no u-part")
        return self.level_poly(self.phi_power, self.k)

    def quadratic_trace_relation(self) -> galois.Poly:
        """-d_k (x^(p^s) + 2 d_0): the expected u^k coefficient of phi^(p^s)."""
        if self.spec.kind is not ModulusKind.QUADRATIC_TRACE or self.k is None:
            raise UnsupportedParameter("relation is defined for quadratic-trace rings with k present")
        d0 = self.spec.delta.parts[0]
        dk = self.spec.delta.parts[self.k]
        x_ps = self.field.x() ** self.P
        two_d0 = self.field.constant_poly(self.field.scalar(2) * d0)
        return -(self.field.constant_poly(dk) * (x_ps + two_d0))

    @cached_property
    def alpha0(self) -> galois.FieldArray:
        """alpha_0 with alpha_0^(p^s) = 2, defined for quadratic-trace contexts."""
        if self.spec.kind is not ModulusKind.QUADRATIC_TRACE:
            raise UnsupportedParameter("alpha_0 is a quadratic-trace constant")
        return self.field.ps_root(self.field.scalar(2), self.s)

    def verify_invariants(self) -> None:
        """Check nilpotency and the phi^(p^s) relation by direct computation."""
        power = self.one
        phi = self.phi_element
        for _ in range(self.nilp_index - 1):
            power = power * phi
        if power.is_zero() or not (power * phi).is_zero():
            raise ParadoxError(
                f"phi is not nilpotent of index {self.nilp_index} in {self.describe()}"
            )

        for level in range(self.k or self.t):
            if not is_zero_poly(self.level_poly(self.phi_power, level)):
                raise ParadoxError(f"phi^(p^s) has a nonzero u^{level} part")

        if self.spec.kind is ModulusKind.QUADRATIC_TRACE and self.k is not None:
            if self.relation_unit() != self.quadratic_trace_relation():
                raise ParadoxError("quadratic-trace relation for phi^(p^s) does not hold")

    # ------------------------------------------------------------------ description

    def describe(self) -> str:
        return (
            f"R^{self.t}[x]/<{self.spec.describe()}> over F_{self.field.order}, s={self.s}"
        )

    def same_as(self, other: "RingContext") -> bool:
        return (
            self.s == other.s
            and self.spec.kind == other.spec.kind
            and self.spec.n == other.spec.n
            and self.spec.delta == other.spec.delta
        )


class QuotElement:
    """An element of R^t[x]/<f(x)> in canonical coordinates."""

    __slots__ = ("ring", "coords")

    def __init__(self, ring: RingContext, coords: galois.FieldArray):
        self.ring = ring
        self.coords = coords

    def _check(self, other: "QuotElement") -> None:
        if not isinstance(other, QuotElement) or other.ring is not self.ring:
            raise InvalidInput("operands belong to different rings")

    def __add__(self, other: "QuotElement") -> "QuotElement":
        self._check(other)
        return QuotElement(self.ring, self.coords + other.coords)

    def __sub__(self, other: "QuotElement") -> "QuotElement":
        self._check(other)
        return QuotElement(self.ring, self.coords - other.coords)

    def __neg__(self) -> "QuotElement":
        return QuotElement(self.ring, -self.coords)

    def __mul__(self, other: "QuotElement") -> "QuotElement":
        self._check(other)
        return QuotElement(self.ring, other.coords @ self.ring.mul_matrix(self))

    def scale(self, c: galois.FieldArray) -> "QuotElement":
        return QuotElement(self.ring, self.coords * c)

    def __pow__(self, n: int) -> "QuotElement":
        if n < 0:
            return inverse(self) ** (-n)
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QuotElement):
            return NotImplemented
        return other.ring is self.ring and bool(np.array_equal(self.coords, other.coords))

    def __hash__(self) -> int:
        return hash(self.coords.tobytes())

    def is_zero(self) -> bool:
        return not np.any(self.coords)

    def is_unit(self) -> bool:
        return is_unit_quot(self)

    def nested(self) -> List[List[List[List[int]]]]:
        """Digit vectors arranged as coords[k][j][i]."""
        ring = self.ring
        grid = self.coords.reshape(ring.t, ring.P, ring.D)
        return [
            [[ring.field.digits(grid[k, j, i]) for i in range(ring.D)] for j in range(ring.P)]
            for k in range(ring.t)
        ]

    def terms(self) -> List[str]:
        ring = self.ring
        grid = self.coords.reshape(ring.t, ring.P, ring.D)
        out = []
        for k, j, i in zip(*np.nonzero(grid != 0)):
            c = ring.field.format_element(grid[k, j, i])
            out.append(f"u^{k}*phi^{j}*x^{i}*{c}")
        return out

    def __str__(self) -> str:
        terms = self.terms()
        return " + ".join(terms) if terms else "0"

    def __repr__(self) -> str:
        return f"QuotElement({self})"


@dataclass(frozen=True)
class LevelTerm:
    """u^level * phi^exponent * unit, one per nonzero u-level."""

    level: int
    exponent: int
    unit: galois.Poly


def make_ring(p: int, m: int, s: int, t: int, spec: ModulusSpec) -> RingContext:
    """Construct and verify R^t[x]/<f(x)> for the given modulus spec."""
    chain = spec.delta.ring
    if (chain.field.p, chain.field.m, chain.t) != (p, m, t):
        raise InvalidInput(
            f"modulus constant lives in R^{chain.t} over F_{chain.field.p}^{chain.field.m}, "
            f"not R^{t} over F_{p}^{m}"
        )
    return RingContext(s, spec)


def ring_from_digits(
    p: int,
    m: int,
    s: int,
    t: int,
    delta: Sequence,
    n: int = 1,
    kind: ModulusKind = ModulusKind.CONSTACYCLIC,
    field_modulus: Optional[Sequence[int]] = None,
) -> RingContext:
    """Build a ring from plain parameters; delta is one field element per u-power."""
    chain = ChainRing(FieldContext(p, m, field_modulus), t)
    constant = chain.element(delta)
    if kind is ModulusKind.QUADRATIC_TRACE:
        spec = ModulusSpec.quadratic_trace(constant)
    else:
        spec = ModulusSpec.constacyclic(n, constant)
    return make_ring(p, m, s, t, spec)


def is_unit_quot(a: QuotElement) -> bool:
    """Unit test by the constant-term criterion, or by rank when phi is reducible."""
    ring = a.ring
    if ring.phi_irreducible:
        return bool(np.any(a.coords[: ring.D] != 0))
    if ring.dim > get_settings().dim_cap:
        raise UnsupportedParameter(
            f"unit test for reducible phi needs dim <= {get_settings().dim_cap}, got {ring.dim}"
        )
    return int(np.linalg.matrix_rank(ring.mul_matrix(a))) == ring.dim


def inverse(a: QuotElement) -> QuotElement:
    """Multiplicative inverse, solved from the multiplication matrix."""
    ring = a.ring
    if a.is_zero():
        raise DivisionByZero("inverse of zero")
    matrix = ring.mul_matrix(a)
    if int(np.linalg.matrix_rank(matrix)) != ring.dim:
        raise NotAUnit(f"{a} is not a unit")
    b = QuotElement(ring, ring.one.coords @ np.linalg.inv(matrix))
    if a * b != ring.one:
        raise ParadoxError(f"inverse of {a} failed to verify")
    return b


def poly_unit_check(ring: RingContext, g: galois.Poly) -> QuotElement:
    """Invert a nonzero g with deg g < deg phi.

    From a g + b phi^(p^s) = 1 the element z = b phi^(p^s) lies in <u^k>, so
    g^-1 = a (1 + z + z^2 + ...) with finitely many nonzero terms.
    """
    if not ring.phi_irreducible:
        raise UnsupportedParameter("poly_unit_check requires an irreducible phi")
    if is_zero_poly(g):
        raise DivisionByZero("the zero polynomial is not invertible")
    if g.degree >= ring.D:
        raise InvalidInput(f"deg g = {g.degree} must be below deg phi = {ring.D}")

    d, a, b = galois.egcd(g, ring.phi**ring.P)
    if d != galois.Poly.One(ring.field.GF):
        raise ParadoxError(f"gcd(g, phi^(p^s)) = {d} for g = {g}")

    z = ring.from_poly(b * ring.phi**ring.P)
    series = ring.one
    term = ring.one
    for _ in range(ring.t):
        term = term * z
        if term.is_zero():
            break
        series = series + term
    result = ring.from_poly(a) * series

    if result * ring.from_poly(g) != ring.one:
        raise ParadoxError(f"series inverse of {g} failed to verify")
    return result


def u2_relation_decompose(a: QuotElement) -> List[LevelTerm]:
    """Split a into u^k phi^v h terms, one per nonzero u-level, h a unit."""
    ring = a.ring
    if a.is_zero():
        raise InvalidInput("the zero element has no level decomposition")
    if not ring.phi_irreducible:
        raise UnsupportedParameter("level decomposition requires an irreducible phi")

    terms = []
    for level in range(ring.t):
        v = ring.level_valuation(a, level)
        if v == ring.P:
            continue
        quotient, remainder = divmod(ring.level_poly(a, level), ring.phi**v)
        if not is_zero_poly(remainder):
            raise ParadoxError(f"phi^{v} does not divide the u^{level} part of {a}")
        terms.append(LevelTerm(level, v, quotient))
    return terms


def recompose(ring: RingContext, terms: Sequence[LevelTerm]) -> QuotElement:
    result = ring.zero
    for term in terms:
        result = result + ring.from_poly(ring.phi**term.exponent * term.unit, term.level)
    return result


def element_from_levels(ring: RingContext, levels: Dict[int, galois.Poly]) -> QuotElement:
    result = ring.zero
    for level, f in levels.items():
        result = result + ring.from_poly(f, level)
    return result

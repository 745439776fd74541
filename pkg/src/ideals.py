"""Ideals of R^t[x]/<f(x)> as F_{p^m}-subspaces in reduced echelon form.

An ideal is stored as the reduced row echelon basis of its coordinate space.
Because the canonical coordinates are ordered (u-level, phi-power, x-power),
the rows whose pivot lies at u-level l span exactly the part of the ideal
inside u^l R, and their count is the dimension of the l-th torsion.
"""

from typing import Iterable, Iterator, List, Optional, Sequence

import galois
import numpy as np

from src.exceptions import InvalidInput, ParadoxError, UnsupportedParameter
from src.logger import get_logger
from src.quotient_ring import QuotElement, RingContext

logger = get_logger(__name__)


def reduced_basis(ring: RingContext, rows: galois.FieldArray) -> galois.FieldArray:
    """Reduced row echelon form with zero rows dropped."""
    if rows.shape[0] == 0:
        return ring.field.GF.Zeros((0, ring.dim))
    reduced = rows.row_reduce()
    keep = np.any(reduced != 0, axis=1)
    return reduced[keep]


class Ideal:
    """An ideal given by generators and its canonical basis."""

    def __init__(
        self,
        ring: RingContext,
        basis: galois.FieldArray,
        generators: Sequence[QuotElement] = (),
    ):
        self.ring = ring
        self.basis = basis
        self.generators = tuple(generators)
        self._pivots = (
            np.argmax(basis != 0, axis=1) if basis.shape[0] else np.zeros(0, dtype=int)
        )

    # ------------------------------------------------------------------ identity

    @property
    def dim(self) -> int:
        return int(self.basis.shape[0])

    @property
    def key(self) -> bytes:
        raw = self.basis.view(np.ndarray).astype(np.int64)
        return self.dim.to_bytes(4, "little") + raw.tobytes()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Ideal):
            return NotImplemented
        return (
            other.ring is self.ring
            and self.basis.shape == other.basis.shape
            and bool(np.array_equal(self.basis, other.basis))
        )

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"Ideal(dim={self.dim}, generators={[str(g) for g in self.generators]})"

    def is_zero(self) -> bool:
        return self.dim == 0

    def is_whole(self) -> bool:
        return self.dim == self.ring.dim

    @property
    def pivots(self) -> np.ndarray:
        return self._pivots

    def pivot_levels(self) -> np.ndarray:
        return self._pivots // self.ring.N

    def row_with_pivot(self, k: int, j: int, i: int = 0) -> Optional[QuotElement]:
        """The basis row whose leading coordinate is u^k phi^j x^i, if any."""
        target = self.ring.index(k, j, i)
        hits = np.flatnonzero(self._pivots == target)
        if hits.size == 0:
            return None
        return QuotElement(self.ring, self.basis[hits[0]].copy())

    def elements_of_basis(self) -> List[QuotElement]:
        return [QuotElement(self.ring, row.copy()) for row in self.basis]

    # ------------------------------------------------------------------ membership

    def reduce(self, vector: galois.FieldArray) -> galois.FieldArray:
        if self.dim == 0:
            return vector.copy()
        return vector - vector[self._pivots] @ self.basis

    def contains(self, a: QuotElement) -> bool:
        if a.ring is not self.ring:
            raise InvalidInput("element and ideal belong to different rings")
        return not np.any(self.reduce(a.coords))

    def __contains__(self, a: QuotElement) -> bool:
        return self.contains(a)

    def is_subideal_of(self, other: "Ideal") -> bool:
        _check_same_ring(self, other)
        if self.dim > other.dim:
            return False
        return all(not np.any(other.reduce(row)) for row in self.basis)

    def __add__(self, other: "Ideal") -> "Ideal":
        return ideal_sum(self, other)

    def __le__(self, other: "Ideal") -> bool:
        return self.is_subideal_of(other)

    # ------------------------------------------------------------------ torsion

    def level_counts(self) -> List[int]:
        """Number of basis rows whose pivot lies at each u-level."""
        levels = self.pivot_levels()
        return [int(np.count_nonzero(levels == k)) for k in range(self.ring.t)]

    def torsion(self, level: int) -> int:
        return torsion(self, level)

    def torsions(self) -> List[int]:
        return [torsion(self, level) for level in range(self.ring.t)]

    def cardinality_exponent(self) -> int:
        return cardinality(self)


def _check_same_ring(a: Ideal, b: Ideal) -> None:
    if a.ring is not b.ring:
        raise InvalidInput("ideals belong to different rings")


def span(ring: RingContext, gens: Iterable[QuotElement]) -> Ideal:
    """The ideal generated by gens.

    The rows of the multiplication matrix of g are the products of g with
    every canonical basis element, so stacking them spans g*R directly.
    """
    gens = list(gens)
    for g in gens:
        if g.ring is not ring:
            raise InvalidInput("generator belongs to a different ring")
    if not gens:
        return Ideal(ring, reduced_basis(ring, ring.field.GF.Zeros((0, ring.dim))), ())
    stacked = ring.mul_matrices(ring.field.GF(np.stack([g.coords for g in gens])))
    rows = stacked.reshape(len(gens) * ring.dim, ring.dim)
    return Ideal(ring, reduced_basis(ring, rows), gens)


def principal_bases(ring: RingContext, rows: galois.FieldArray) -> List[galois.FieldArray]:
    """Canonical bases of the principal ideals generated by each row."""
    matrices = ring.mul_matrices(rows)
    return [reduced_basis(ring, matrix) for matrix in matrices]


def iter_coordinate_rows(
    ring: RingContext, batch_size: int = 2048, normalized: bool = True
) -> Iterator[galois.FieldArray]:
    """Batches of nonzero coordinate vectors in integer order.

    With normalized=True only vectors whose first nonzero entry is 1 are kept;
    every nonzero element is a scalar multiple of exactly one of them.
    """
    q = ring.field.order
    total = q**ring.dim
    powers = q ** np.arange(ring.dim, dtype=np.int64)
    for start in range(1, total, batch_size):
        indices = np.arange(start, min(start + batch_size, total), dtype=np.int64)
        digits = (indices[:, None] // powers[None, :]) % q
        leading = digits[np.arange(digits.shape[0]), np.argmax(digits != 0, axis=1)]
        selected = digits[leading == 1] if normalized else digits
        if selected.shape[0]:
            yield ring.field.GF(selected)


def iter_principal_bases(ring: RingContext, batch_size: int = 2048) -> Iterator[galois.FieldArray]:
    """Canonical bases of all nonzero principal ideals, with repeats."""
    for rows in iter_coordinate_rows(ring, batch_size):
        yield from principal_bases(ring, rows)


def ideal_from_rows(ring: RingContext, rows: galois.FieldArray) -> Ideal:
    """An ideal from rows already known to span an ideal."""
    return Ideal(ring, reduced_basis(ring, rows))


def contains(ideal: Ideal, a: QuotElement) -> bool:
    return ideal.contains(a)


def ideal_sum(a: Ideal, b: Ideal) -> Ideal:
    _check_same_ring(a, b)
    rows = np.concatenate([a.basis, b.basis], axis=0).view(a.ring.field.GF)
    return Ideal(a.ring, reduced_basis(a.ring, rows), a.generators + b.generators)


def ideal_eq(a: Ideal, b: Ideal) -> bool:
    _check_same_ring(a, b)
    return a == b


def is_closed(ideal: Ideal) -> bool:
    """Multiplying every basis row by x and by u stays inside the row space."""
    ring = ideal.ring
    for matrix in (ring.X, ring.U):
        for row in ideal.basis @ matrix:
            if np.any(ideal.reduce(row)):
                return False
    return True


def torsion_dims(ideal: Ideal) -> List[int]:
    """F_{p^m}-dimensions of the torsion modules, valid for any phi."""
    return ideal.level_counts()


def torsion(ideal: Ideal, level: int) -> int:
    """The torsional degree T_level: Tor_level(I) = <phi^T> in F_{p^m}[x]/<phi^(p^s)>."""
    ring = ideal.ring
    if not ring.phi_irreducible:
        raise UnsupportedParameter("torsional degrees need an irreducible phi")
    if not 0 <= level < ring.t:
        raise InvalidInput(f"level must lie in [0, {ring.t}), got {level}")

    count = ideal.level_counts()[level]
    if count % ring.D:
        raise ParadoxError(f"torsion dimension {count} is not a multiple of deg phi = {ring.D}")
    degree = ring.P - count // ring.D

    at_level = ideal.pivots[ideal.pivot_levels() == level] - level * ring.N
    leading = int(at_level.min()) // ring.D if at_level.size else ring.P
    if leading != degree:
        raise ParadoxError(
            f"torsion at level {level}: dimension gives {degree}, leading pivot gives {leading}"
        )
    return degree


def cardinality(ideal: Ideal) -> int:
    """Exponent e with |I| = p^e."""
    ring = ideal.ring
    exponent = ring.m * ideal.dim
    if ring.phi_irreducible:
        expected = ring.m * ring.D * (ring.t * ring.P - sum(ideal.torsions()))
        if expected != exponent:
            raise ParadoxError(
                f"cardinality exponent {exponent} disagrees with torsion law {expected}"
            )
    return exponent


def smallest_u_level_exponent(ideal: Ideal, level: int) -> int:
    """Smallest e with u^level phi^e + (higher u-levels) in I; p^s when there is none."""
    ring = ideal.ring
    if not 1 <= level < ring.t:
        raise InvalidInput(f"level must lie in [1, {ring.t}), got {level}")

    if level == ring.t - 1:
        for e in range(ring.P):
            if ideal.contains(ring.basis_element(level, e, 0)):
                return e
        return ring.P

    rows = ideal.basis[ideal.pivot_levels() >= level][:, ring.level_slice(level)]
    if rows.shape[0] == 0:
        return ring.P
    base_rank = int(np.linalg.matrix_rank(rows))
    for e in range(ring.P):
        target = ring.field.GF.Zeros((1, ring.N))
        target[0, e * ring.D] = 1
        stacked = np.concatenate([rows, target], axis=0).view(ring.field.GF)
        if int(np.linalg.matrix_rank(stacked)) == base_rank:
            return e
    return ring.P


def zero_ideal(ring: RingContext) -> Ideal:
    return span(ring, [])


def whole_ring(ring: RingContext) -> Ideal:
    return span(ring, [ring.one])

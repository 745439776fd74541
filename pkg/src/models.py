"""Data models for ring descriptors, ideal records and census reports."""

from enum import Enum
from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field


class OutputFormat(str, Enum):
    """Output formats understood by the command line."""

    JSON = "json"
    CSV = "csv"
    TEXT = "text"
    YAML = "yaml"


class FactorRecord(BaseModel):
    """One irreducible factor of the base polynomial."""

    factor: List[List[int]] = Field(..., description="Ascending coefficient digit vectors")
    multiplicity: int = Field(..., ge=1, description="Multiplicity in the factorization")


class RingDescriptor(BaseModel):
    """Parameters and derived constants of R^t[x]/<f(x)>."""

    p: int = Field(..., description="Characteristic")
    m: int = Field(..., description="Extension degree of the coefficient field")
    s: int = Field(..., description="Exponent of p in the code length")
    t: int = Field(..., description="Nilpotency index of u")
    n: int = Field(..., description="Base degree: n for x^(n p^s) - delta, 2 for quadratic trace")
    kind: str = Field(..., description="constacyclic or quadratic_trace")
    field_modulus: List[int] = Field(..., description="Ascending digits of the field modulus")
    delta: List[List[int]] = Field(..., description="Ring constant, one digit vector per u-power")
    delta00: List[int] = Field(..., description="p^s-th root of the constant part of delta")
    phi: List[List[int]] = Field(..., description="Base polynomial, ascending coefficients")
    phi_irreducible: bool = Field(..., description="Whether phi is irreducible")
    phi_factors: List[FactorRecord] = Field(
        default_factory=list, description="Factorization of phi over F_{p^m}"
    )
    k: Optional[int] = Field(default=None, description="First u-level of f - phi^(p^s)")
    nilp_index: int = Field(..., description="Nilpotency index of phi")
    dim: int = Field(..., description="Dimension over F_{p^m}")
    is_chain: Optional[bool] = Field(
        default=None, description="Whether the ideals form a chain (irreducible phi only)"
    )
    closed_forms_apply: bool = Field(
        default=False, description="Whether the t = 3 classifier and lemmas apply"
    )
    alpha0: Optional[List[int]] = Field(
        default=None, description="alpha_0 with alpha_0^(p^s) = 2 (quadratic trace only)"
    )


class TorsionProfile(BaseModel):
    """Torsional degrees (T_0, T_1, T_2) of a t = 3 ideal."""

    model_config = ConfigDict(frozen=True)

    T0: int = Field(..., ge=0)
    T1: int = Field(..., ge=0)
    T2: int = Field(..., ge=0)

    def as_list(self) -> List[int]:
        return [self.T0, self.T1, self.T2]

    @property
    def total(self) -> int:
        return self.T0 + self.T1 + self.T2


class TypeParameters(BaseModel):
    """Integer parameters of a generator type; unused ones stay None."""

    model_config = ConfigDict(frozen=True)

    a: Optional[int] = Field(default=None, ge=0)
    b: Optional[int] = Field(default=None, ge=0)
    c: Optional[int] = Field(default=None, ge=0)
    t0: Optional[int] = Field(default=None, ge=0)
    t1: Optional[int] = Field(default=None, ge=0)
    t2: Optional[int] = Field(default=None, ge=0)
    L: Optional[int] = Field(default=None, ge=0)
    M: Optional[int] = Field(default=None, ge=0)

    def sort_key(self) -> List[int]:
        """Absent parameters sort first."""
        return [-1 if value is None else value for value in self.model_dump().values()]


class IdealTypeRecord(BaseModel):
    """Tag and parameters of a classified t = 3 ideal."""

    tag: int = Field(..., ge=1, le=8, description="Generator type 1..8")
    a: Optional[int] = None
    b: Optional[int] = None
    c: Optional[int] = None
    t0: Optional[int] = None
    t1: Optional[int] = None
    t2: Optional[int] = None
    h0: Optional[List[List[int]]] = Field(default=None, description="Unit cofactor h0")
    h1: Optional[List[List[int]]] = Field(default=None, description="Unit cofactor h1")
    h2: Optional[List[List[int]]] = Field(default=None, description="Unit cofactor h2")
    L: Optional[int] = None
    M: Optional[int] = None
    closed_form: Optional[int] = Field(
        default=None, description="Closed-form value compared against L or M"
    )
    flagged: bool = Field(
        default=False, description="Parameters fall where the lemma statement is silent"
    )


class IdealRecord(BaseModel):
    """An ideal with its invariants."""

    generators: List[str] = Field(default_factory=list, description="Generator text forms")
    dim: int = Field(..., ge=0, description="Dimension over F_{p^m}")
    card_exponent: int = Field(..., ge=0, description="e with |I| = p^e")
    torsion: Optional[List[int]] = Field(default=None, description="Torsional degrees")
    type: Optional[IdealTypeRecord] = Field(default=None, description="Classification")


class AssertionResult(BaseModel):
    """Outcome of one registered census assertion."""

    name: str
    passed: bool
    checked: int = Field(default=0, description="Number of cases examined")
    failures: int = Field(default=0, description="Number of failing cases")
    counterexample: Optional[str] = Field(default=None, description="First failing case")
    detail: Optional[str] = None
    informational: bool = Field(
        default=False, description="Reported only; does not affect the exit status"
    )


class CensusReport(BaseModel):
    """Full ideal census of a ring together with the assertion outcomes."""

    ring: RingDescriptor
    ideal_count: int = 0
    ideals: List[IdealRecord] = Field(default_factory=list)
    assertions: List[AssertionResult] = Field(default_factory=list)
    coverage: Dict[str, List[str]] = Field(default_factory=dict)
    unclassified: int = 0
    flagged: int = 0

    @property
    def passed(self) -> bool:
        return all(result.passed for result in self.assertions if not result.informational)


class SplitRecord(BaseModel):
    """A CRT split plan with its components."""

    case: str
    ring: RingDescriptor
    delta_tilde: Optional[List[List[int]]] = None
    b: Optional[List[int]] = None
    c: Optional[List[int]] = None
    factors: List[RingDescriptor] = Field(default_factory=list)
    bezout: List[List[int]] = Field(
        default_factory=list, description="Idempotent coordinates, one row per component"
    )


class TableRow(BaseModel):
    """One row of a classification table."""

    tag: Optional[int] = None
    a: Optional[int] = None
    b: Optional[int] = None
    c: Optional[int] = None
    t0: Optional[int] = None
    t1: Optional[int] = None
    t2: Optional[int] = None
    L: Optional[int] = None
    M: Optional[int] = None
    torsion: List[int] = Field(default_factory=list)
    card_exponent: int = 0


class LemmaCase(BaseModel):
    """One parameter tuple of the closed-form sweep."""

    lemma: str
    params: Dict[str, Optional[int]]
    units: Dict[str, Optional[str]]
    closed_form: int
    oracle: int
    printed_form: Optional[int] = None
    flagged: bool = False

    @property
    def agrees(self) -> bool:
        return self.closed_form == self.oracle


class LemmaSweepReport(BaseModel):
    """Result of sweeping the closed forms over all admissible tuples."""

    ring: RingDescriptor
    cases: int = 0
    mismatches: List[LemmaCase] = Field(default_factory=list)
    flagged: int = 0
    printed_disagreements: int = 0

"""Exhaustive ideal census and the assertion registry checked against it."""

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional

import numpy as np

from src.chain_ring import is_nth_power_chain, nth_root_lift
from src.classification import (
    IdealType,
    TypeTag,
    cardinality_from_type,
    chain_check,
    classify_t3,
    torsions_from_type,
)
from src.config import get_settings
from src.decomposition import CrtSplit, factors_multiply_back, plan_split, sample_elements
from src.exceptions import ChainRingError, ParadoxError, TooLarge
from src.ideals import (
    Ideal,
    is_closed,
    iter_coordinate_rows,
    iter_principal_bases,
    smallest_u_level_exponent,
    span,
)
from src.logger import get_logger
from src.models import AssertionResult, CensusReport, LemmaCase, LemmaSweepReport
from src.parameters import ParameterLemmas, in_t3_family
from src.quotient_ring import ModulusKind, RingContext, is_unit_quot
from src.serialization import describe_ring, ideal_record, poly_text

logger = get_logger(__name__)


# Operation -> assertions that exercise it.
COVERAGE: Dict[str, List[str]] = {
    "span": ["span_closure"],
    "contains": ["chain_predicate", "phi_power_relation"],
    "ideal_sum": ["span_closure"],
    "torsion": ["torsion_product", "torsion_monotone", "torsions_from_type"],
    "cardinality": ["torsion_product", "torsions_from_type"],
    "smallest_u_level_exponent": ["closed_form_L"],
    "closed_form_L_type3": ["closed_form_L"],
    "closed_form_L_type5": ["closed_form_L", "printed_form_L"],
    "closed_form_L_type7": ["closed_form_L", "printed_form_L"],
    "classify_t3": ["eight_types"],
    "chain_check": ["chain_predicate"],
    "is_unit_quot": ["unit_criterion"],
    "is_nth_power_chain": ["nth_power_criterion"],
    "nth_root_lift": ["nth_power_criterion"],
    "make_ring": ["nilpotency_index", "quadratic_trace_relation"],
    "plan_split": ["split_factor_product"],
    "crt_forward": ["crt_product"],
    "crt_backward": ["crt_product"],
    "ideal_product": ["crt_product"],
}


def enumerate_ideals(ring: RingContext) -> List[Ideal]:
    """Every ideal of the ring, sorted by (dimension, canonical basis).

    All principal ideals are collected first; the pairwise sum closure of that
    set is the whole lattice.
    """
    settings = get_settings()
    size = ring.all_elements_count()
    if size > settings.enumeration_cap:
        raise TooLarge(f"|R| = {size} exceeds enumeration cap {settings.enumeration_cap}")

    found: Dict[bytes, Ideal] = {}
    zero = span(ring, [])
    found[zero.key] = zero
    for basis in iter_principal_bases(ring):
        ideal = Ideal(ring, basis)
        found.setdefault(ideal.key, ideal)
    principal_count = len(found)

    everything = list(found.values())
    frontier = everything[:]
    rounds = 0
    while frontier:
        rounds += 1
        if rounds > settings.max_closure_rounds:
            raise ParadoxError(f"sum closure did not settle within {rounds - 1} rounds")
        fresh = []
        for left in frontier:
            for right in everything:
                total = left + right
                if total.key not in found:
                    found[total.key] = total
                    fresh.append(total)
        everything.extend(fresh)
        frontier = fresh

    ideals = sorted(found.values(), key=lambda ideal: (ideal.dim, ideal.key))
    logger.info(
        "Enumerated ideals",
        ring=ring.describe(),
        principal=principal_count,
        total=len(ideals),
        rounds=rounds,
    )
    return [Ideal(ring, ideal.basis) for ideal in ideals]


@dataclass
class _Tally:
    """Accumulates cases for one assertion."""

    name: str
    informational: bool = False
    checked: int = 0
    failures: int = 0
    counterexample: Optional[str] = None
    detail: Optional[str] = None

    def record(self, ok: bool, case: Callable[[], str]) -> None:
        self.checked += 1
        if not ok:
            self.failures += 1
            if self.counterexample is None:
                self.counterexample = case()

    def result(self) -> AssertionResult:
        return AssertionResult(
            name=self.name,
            passed=self.failures == 0,
            checked=self.checked,
            failures=self.failures,
            counterexample=self.counterexample,
            detail=self.detail,
            informational=self.informational,
        )


@dataclass
class _Census:
    ring: RingContext
    ideals: List[Ideal]
    torsions: List[Optional[List[int]]] = field(default_factory=list)
    types: List[Optional[IdealType]] = field(default_factory=list)
    closed_forms: List[Optional[int]] = field(default_factory=list)
    flags: List[bool] = field(default_factory=list)


def _ideal_label(ideal: Ideal) -> str:
    return f"dim={ideal.dim} basis={[str(g) for g in ideal.elements_of_basis()]}"


# ---------------------------------------------------------------------- assertions


def _check_span_closure(census: _Census) -> List[AssertionResult]:
    tally = _Tally("span_closure")
    for ideal in census.ideals:
        tally.record(is_closed(ideal), lambda: _ideal_label(ideal))
    if census.ideals:
        first, last = census.ideals[0], census.ideals[-1]
        tally.record(first.is_zero() and last.is_whole(), lambda: "lattice lacks 0 or R")
    return [tally.result()]


def _check_torsions(census: _Census) -> List[AssertionResult]:
    ring = census.ring
    product = _Tally("torsion_product")
    monotone = _Tally("torsion_monotone")
    for ideal, degrees in zip(census.ideals, census.torsions):
        if degrees is None:
            counts = ideal.level_counts()
            product.record(sum(counts) == ideal.dim, lambda: _ideal_label(ideal))
            monotone.record(counts == sorted(counts), lambda: _ideal_label(ideal))
            continue
        expected = ring.m * ring.D * (ring.t * ring.P - sum(degrees))
        product.record(ring.m * ideal.dim == expected, lambda: _ideal_label(ideal))
        monotone.record(
            all(x >= y for x, y in zip(degrees, degrees[1:])), lambda: _ideal_label(ideal)
        )
    return [product.result(), monotone.result()]


def _check_nilpotency(census: _Census) -> List[AssertionResult]:
    ring = census.ring
    nilpotency = _Tally("nilpotency_index")
    phi = ring.phi_element
    below = phi ** (ring.nilp_index - 1)
    nilpotency.record(
        not below.is_zero() and (below * phi).is_zero(),
        lambda: f"phi^{ring.nilp_index} is not the first vanishing power",
    )

    relation = _Tally("phi_power_relation")
    if ring.k is not None:
        left = span(ring, [ring.phi_power])
        right = span(ring, [ring.from_chain(ring.chain.u_power(ring.k))])
        relation.record(left == right, lambda: f"<phi^(p^s)> != <u^{ring.k}>")
    else:
        relation.record(ring.phi_power.is_zero(), lambda: "phi^(p^s) != 0 with no u-part")
    return [nilpotency.result(), relation.result()]


def _check_quadratic_trace(census: _Census) -> List[AssertionResult]:
    ring = census.ring
    if ring.spec.kind is not ModulusKind.QUADRATIC_TRACE or ring.k is None:
        return []
    tally = _Tally("quadratic_trace_relation")
    tally.record(
        ring.relation_unit() == ring.quadratic_trace_relation(),
        lambda: f"u^{ring.k} part of phi^(p^s) is {ring.relation_unit()}",
    )
    return [tally.result()]


def _check_units(census: _Census) -> List[AssertionResult]:
    ring = census.ring
    if ring.all_elements_count() > get_settings().unit_census_cap:
        return []
    tally = _Tally("unit_criterion")
    one = ring.one.coords[np.newaxis, :]
    tally.record(not is_unit_quot(ring.zero), lambda: "zero reported as a unit")
    for rows in iter_coordinate_rows(ring, normalized=False):
        for coords, matrix in zip(rows, ring.mul_matrices(rows)):
            # a is a unit iff b @ M_a = 1 has a solution b
            augmented = np.concatenate([matrix, one], axis=0)
            solvable = np.linalg.matrix_rank(matrix) == np.linalg.matrix_rank(augmented)
            element = ring.element(coords)
            tally.record(is_unit_quot(element) == bool(solvable), lambda: str(element))
    return [tally.result()]


def _check_nth_powers(census: _Census) -> List[AssertionResult]:
    chain = census.ring.chain
    if chain.order > get_settings().unit_census_cap:
        return []
    tally = _Tally("nth_power_criterion")
    elements = list(chain.all_elements())
    units = [a for a in elements if a.is_unit()]
    for n in (2, 3):
        if math.gcd(n, chain.field.p) != 1:
            continue
        powers = {beta**n for beta in units}
        for delta in units:
            predicted = is_nth_power_chain(delta, n)
            tally.record(predicted == (delta in powers), lambda: f"n={n} delta={delta}")
            if predicted:
                root = nth_root_lift(delta, n)
                tally.record(root**n == delta, lambda: f"root lift n={n} delta={delta}")
    return [tally.result()]


def _check_chain(census: _Census) -> List[AssertionResult]:
    ring = census.ring
    if not ring.phi_irreducible:
        return []
    tally = _Tally("chain_predicate")
    verdict = chain_check(ring)
    ideals = census.ideals
    totally_ordered = all(
        ideals[i].is_subideal_of(ideals[i + 1]) and ideals[i].dim < ideals[i + 1].dim
        for i in range(len(ideals) - 1)
    )
    tally.record(verdict.is_chain == totally_ordered, lambda: f"is_chain={verdict.is_chain}")
    if verdict.is_chain:
        tally.record(
            sorted(verdict.chain, key=lambda ideal: ideal.dim) == ideals,
            lambda: "chain members differ from the census",
        )
    else:
        tally.record(
            verdict.witness is not None and verdict.witness in ideals,
            lambda: "non-principal witness missing from the census",
        )
    tally.detail = f"is_chain={verdict.is_chain}, ideals={len(ideals)}"
    return [tally.result()]


def _check_types(census: _Census) -> List[AssertionResult]:
    ring = census.ring
    if not in_t3_family(ring):
        return []
    eight = _Tally("eight_types")
    from_type = _Tally("torsions_from_type")
    closed = _Tally("closed_form_L")
    printed = _Tally("printed_form_L", informational=True)
    lemmas = ParameterLemmas(ring)

    for index, ideal in enumerate(census.ideals):
        kind = census.types[index]
        eight.record(kind is not None, lambda: _ideal_label(ideal))
        if kind is None:
            continue
        degrees = census.torsions[index]
        from_type.record(
            torsions_from_type(kind, ring.P).as_list() == degrees
            and cardinality_from_type(kind, ring) == ideal.cardinality_exponent(),
            lambda: f"type {kind.tag} {kind.params()} torsion {degrees}",
        )
        value, oracle = census.closed_forms[index], _oracle_value(kind)
        if value is None:
            continue
        closed.record(
            value == oracle, lambda: f"type {kind.tag} {kind.params()}: {value} != {oracle}"
        )
        shown = _printed_value(lemmas, kind)
        if shown is not None:
            printed.record(
                shown == oracle, lambda: f"type {kind.tag} {kind.params()}: {shown} != {oracle}"
            )

    closed.detail = f"flagged={sum(census.flags)}"
    return [eight.result(), from_type.result(), closed.result(), printed.result()]


def _oracle_value(kind: IdealType) -> Optional[int]:
    """The census value each closed form predicts."""
    if kind.tag in (TypeTag.ONE_GENERATOR_LEVEL_ONE, TypeTag.TWO_GENERATORS_LEVEL_ONE):
        return kind.L
    if kind.tag == TypeTag.ONE_GENERATOR:
        return kind.M
    if kind.tag == TypeTag.WITH_TOP_LEVEL:
        return kind.L
    if kind.tag in (TypeTag.WITH_LEVEL_ONE, TypeTag.THREE_GENERATORS):
        return kind.M
    return None


def closed_form_for(lemmas: ParameterLemmas, kind: IdealType) -> Optional[int]:
    """Evaluate the closed form that applies to a classified ideal."""
    if kind.tag in (TypeTag.ONE_GENERATOR_LEVEL_ONE, TypeTag.TWO_GENERATORS_LEVEL_ONE):
        return lemmas.type3(kind.a, kind.t0, kind.h0)
    if kind.tag in (TypeTag.ONE_GENERATOR, TypeTag.WITH_TOP_LEVEL):
        return lemmas.type5(kind.a, kind.t0, kind.t1, kind.h0, kind.h1)
    if kind.tag in (TypeTag.WITH_LEVEL_ONE, TypeTag.THREE_GENERATORS):
        return lemmas.type7(kind.a, kind.b, kind.t0, kind.t1, kind.t2, kind.h0, kind.h1, kind.h2)
    return None


def is_flagged(lemmas: ParameterLemmas, kind: IdealType) -> bool:
    if kind.tag in (TypeTag.WITH_LEVEL_ONE, TypeTag.THREE_GENERATORS):
        return lemmas.in_unstated_region(kind.a, kind.b, kind.t0, kind.h0)
    return False


def _printed_value(lemmas: ParameterLemmas, kind: IdealType) -> Optional[int]:
    if kind.tag in (TypeTag.ONE_GENERATOR, TypeTag.WITH_TOP_LEVEL):
        return lemmas.printed_type5(kind.a, kind.t0, kind.t1, kind.h0, kind.h1)
    if kind.tag in (TypeTag.WITH_LEVEL_ONE, TypeTag.THREE_GENERATORS):
        return lemmas.printed_type7(
            kind.a, kind.b, kind.t0, kind.t1, kind.t2, kind.h0, kind.h1, kind.h2
        )
    return None


def _check_split(census: _Census) -> List[AssertionResult]:
    ring = census.ring
    spec = ring.spec
    if spec.kind is not ModulusKind.CONSTACYCLIC or spec.n not in (2, 3):
        return []
    if spec.n == 2 and ring.p == 2:
        return []

    factor = _Tally("split_factor_product")
    plan = plan_split(ring)
    power = is_nth_power_chain(spec.delta, spec.n)
    factor.record(plan.splits == power, lambda: f"{plan.case.value} but power test says {power}")
    if plan.splits:
        factor.record(factors_multiply_back(ring, plan.factors), lambda: plan.case.value)
    if plan.b is not None:
        field_ctx = ring.field
        factor.record(
            plan.b * plan.c == 1 and plan.b + plan.c == field_ctx.scalar(-1),
            lambda: "bc != 1 or b + c != -1",
        )
    factor.detail = plan.case.value
    results = [factor.result()]
    if not plan.splits:
        return results

    product = _Tally("crt_product")
    split = CrtSplit(ring, plan)
    settings = get_settings()
    samples = sample_elements(ring, 2 * settings.sample_count, settings.random_seed)
    for a, b in zip(samples[::2], samples[1::2]):
        image_a, image_b = split.forward(a), split.forward(b)
        product.record(
            split.forward(a * b) == tuple(x * y for x, y in zip(image_a, image_b))
            and split.forward(a + b) == tuple(x + y for x, y in zip(image_a, image_b))
            and split.backward(image_a) == a,
            lambda: f"homomorphism fails at {a}",
        )
    for j, comp in enumerate(split.components):
        for index in range(comp.dim):
            coords = comp.field.GF.Zeros(comp.dim)
            coords[index] = 1
            part = comp.element(coords)
            parts = tuple(part if i == j else other.zero for i, other in enumerate(split.components))
            product.record(split.forward(split.backward(parts)) == parts, lambda: f"component {j}")

    component_counts = []
    for comp in split.components:
        if comp.all_elements_count() > settings.enumeration_cap:
            component_counts = []
            break
        component_counts.append(len(enumerate_ideals(comp)))
    for ideal in census.ideals:
        product.record(
            split.ideal_product(split.split_ideal(ideal)) == ideal, lambda: _ideal_label(ideal)
        )
    if component_counts:
        product.record(
            len(census.ideals) == math.prod(component_counts),
            lambda: f"{len(census.ideals)} ideals vs components {component_counts}",
        )
    product.detail = f"component ideal counts {component_counts}"
    return results + [product.result()]


ASSERTIONS: List[Callable[[_Census], List[AssertionResult]]] = [
    _check_span_closure,
    _check_torsions,
    _check_nilpotency,
    _check_quadratic_trace,
    _check_units,
    _check_nth_powers,
    _check_chain,
    _check_types,
    _check_split,
]


def verify_theorems(ring: RingContext) -> CensusReport:
    """Enumerate the ideal lattice and run every registered assertion."""
    descriptor = describe_ring(ring)
    try:
        ideals = enumerate_ideals(ring)
    except ParadoxError as exc:
        failure = AssertionResult(name="enumeration", passed=False, detail=str(exc))
        return CensusReport(ring=descriptor, assertions=[failure], coverage=COVERAGE)

    census = _Census(ring, ideals)
    lemmas = ParameterLemmas(ring) if in_t3_family(ring) else None
    for ideal in ideals:
        census.torsions.append(ideal.torsions() if ring.phi_irreducible else None)
        kind, value, flagged = None, None, False
        if lemmas is not None:
            try:
                kind = classify_t3(ideal)
                value = closed_form_for(lemmas, kind)
                flagged = is_flagged(lemmas, kind)
            except ChainRingError as exc:
                logger.warning("Classification failed", error=str(exc), ideal=_ideal_label(ideal))
        census.types.append(kind)
        census.closed_forms.append(value)
        census.flags.append(flagged)

    results: List[AssertionResult] = []
    for check in ASSERTIONS:
        try:
            results.extend(check(census))
        except ChainRingError as exc:
            name = check.__name__.replace("_check_", "")
            results.append(AssertionResult(name=name, passed=False, detail=f"{type(exc).__name__}: {exc}"))

    records = [
        ideal_record(ideal, census.torsions[i], census.types[i], census.closed_forms[i], census.flags[i])
        for i, ideal in enumerate(ideals)
    ]
    report = CensusReport(
        ring=descriptor,
        ideal_count=len(ideals),
        ideals=records,
        assertions=results,
        coverage=COVERAGE,
        unclassified=sum(1 for kind in census.types if kind is None) if lemmas else 0,
        flagged=sum(census.flags),
    )
    for result in results:
        if not result.passed and not result.informational:
            logger.error("Assertion failed", name=result.name, counterexample=result.counterexample)
    logger.info("Census verified", ring=ring.describe(), ideals=len(ideals), passed=report.passed)
    return report


def sweep_parameter_lemmas(ring: RingContext) -> LemmaSweepReport:
    """Compare every closed form with the membership oracle on all admissible tuples."""
    lemmas = ParameterLemmas(ring)
    P = ring.P
    units = lemmas.sample_units()
    report = LemmaSweepReport(ring=describe_ring(ring))

    def unit_label(h) -> Optional[str]:
        return None if h is None else poly_text(ring, h)

    def record(lemma, params, hs, closed, oracle, printed=None, flagged=False):
        report.cases += 1
        report.flagged += int(flagged)
        if printed is not None and printed != oracle:
            report.printed_disagreements += 1
        if closed != oracle:
            report.mismatches.append(
                LemmaCase(
                    lemma=lemma,
                    params=params,
                    units={k: unit_label(v) for k, v in hs.items()},
                    closed_form=closed,
                    oracle=oracle,
                    printed_form=printed,
                    flagged=flagged,
                )
            )

    for a in range(P):
        for h in units:
            for t in range(a) if h is not None else [0]:
                ideal = span(ring, [lemmas.generator_g2(a, t, h)])
                record(
                    "type3",
                    {"a": a, "t": t},
                    {"h": h},
                    lemmas.type3(a, t, h),
                    smallest_u_level_exponent(ideal, 2),
                )

    for a in range(P):
        for h0, h1 in itertools.product(units, repeat=2):
            for t0 in range(a) if h0 is not None else [0]:
                for t1 in range(a) if h1 is not None else [0]:
                    g1 = lemmas.generator_g1(a, t0, t1, h0, h1)
                    oracle = smallest_u_level_exponent(span(ring, [g1]), 2)
                    record(
                        "type5",
                        {"a": a, "t0": t0, "t1": t1},
                        {"h0": h0, "h1": h1},
                        lemmas.type5(a, t0, t1, h0, h1),
                        oracle,
                        printed=lemmas.printed_type5(a, t0, t1, h0, h1),
                    )

    for a in range(1, P):
        for b in range(a):
            for h0, h1, h2 in itertools.product(units, repeat=3):
                for t0 in range(b) if h0 is not None else [0]:
                    for t1 in range(a) if h1 is not None else [0]:
                        for t2 in range(b) if h2 is not None else [0]:
                            gens = [
                                lemmas.generator_g1(a, t0, t1, h0, h1),
                                lemmas.generator_g2(b, t2, h2),
                            ]
                            oracle = smallest_u_level_exponent(span(ring, gens), 2)
                            record(
                                "type7",
                                {"a": a, "b": b, "t0": t0, "t1": t1, "t2": t2},
                                {"h0": h0, "h1": h1, "h2": h2},
                                lemmas.type7(a, b, t0, t1, t2, h0, h1, h2),
                                oracle,
                                printed=lemmas.printed_type7(a, b, t0, t1, t2, h0, h1, h2),
                                flagged=lemmas.in_unstated_region(a, b, t0, h0),
                            )

    logger.info(
        "Lemma sweep finished",
        ring=ring.describe(),
        cases=report.cases,
        mismatches=len(report.mismatches),
        flagged=report.flagged,
    )
    return report

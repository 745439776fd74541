"""End-to-end checks of the classification results on desk-scale rings."""

import json

import pytest

from src.classification import chain_check
from src.cli import EXIT_OK, main
from src.config import get_settings
from src.decomposition import SplitCase, factors_multiply_back, plan_split
from src.oracle import enumerate_ideals, sweep_parameter_lemmas, verify_theorems
from src.quotient_ring import ModulusKind, ring_from_digits

pytestmark = [pytest.mark.integration]


def _results(report):
    return {result.name: result for result in report.assertions}


class TestChainCase:
    """R^3[x]/<x^3 - (1 + u)> over F_3 is a chain ring."""

    def test_ten_ideals_in_a_chain(self):
        """Test t p^s + 1 = 10 ideals with |<phi^i>| = 3^(9 - i)."""
        ring = ring_from_digits(3, 1, 1, 3, [1, 1])
        ideals = enumerate_ideals(ring)
        assert len(ideals) == 10
        assert all(small <= large for small, large in zip(ideals, ideals[1:]))

        verdict = chain_check(ring)
        assert verdict.is_chain
        assert verdict.card_exponents == list(range(9, -1, -1))
        assert sorted(verdict.chain, key=lambda ideal: ideal.dim) == ideals


@pytest.mark.slow
class TestEightTypes:
    """Every ideal of a t = 3, k = 2 ring has one of eight types."""

    @pytest.mark.parametrize("delta", [[1, 0, 1], [2, 0, 1], [1, 0, 2], [2, 0, 2]])
    def test_census(self, delta):
        """Test classification, torsions and cardinalities on the whole lattice."""
        ring = ring_from_digits(3, 1, 1, 3, delta)
        report = verify_theorems(ring)
        results = _results(report)
        assert report.passed
        assert report.unclassified == 0
        assert results["eight_types"].checked == report.ideal_count
        assert results["torsions_from_type"].failures == 0

    def test_tags_present(self):
        """Test the tags that occur when p^s = 3."""
        report = verify_theorems(ring_from_digits(3, 1, 1, 3, [1, 0, 1]))
        tags = {record.type.tag for record in report.ideals}
        assert {1, 2, 3, 4, 5, 7} <= tags
        assert tags <= set(range(1, 9))

    def test_quadratic_base_polynomial(self):
        """Test the eight types and torsion formulas when phi = x^2 + x + 1."""
        ring = ring_from_digits(2, 1, 1, 3, [1, 0, 1], kind=ModulusKind.QUADRATIC_TRACE)
        assert (ring.D, ring.k) == (2, 2)
        ideals = enumerate_ideals(ring)
        report = verify_theorems(ring)
        results = _results(report)
        assert report.ideal_count == len(ideals)
        assert report.unclassified == 0
        assert results["eight_types"].passed
        assert results["eight_types"].checked == len(ideals)
        assert results["torsions_from_type"].passed
        assert results["torsions_from_type"].checked == len(ideals)


@pytest.mark.slow
class TestParameterLemmas:
    """The closed forms agree with membership for p^s in {2, 3, 4}."""

    @pytest.mark.parametrize("p, s", [(2, 1), (3, 1), (2, 2)])
    def test_sweep(self, p, s):
        """Test zero mismatches, flagged tuples included."""
        ring = ring_from_digits(p, 1, s, 3, [1, 0, 1])
        report = sweep_parameter_lemmas(ring)
        assert report.cases > 0
        assert report.mismatches == []

    def test_unstated_region_is_reached(self):
        """Test p^s = 4 has tuples where the type-7 statement is silent."""
        report = sweep_parameter_lemmas(ring_from_digits(2, 1, 2, 3, [1, 0, 1]))
        assert report.flagged > 0


@pytest.mark.slow
class TestSquareSplit:
    """x^(2 p^s) - delta over R^2 with p = 3."""

    def test_square(self, monkeypatch):
        """Test the CRT maps and the ideal count of the split ring."""
        monkeypatch.setattr(get_settings(), "sample_count", 1000)
        ring = ring_from_digits(3, 1, 1, 2, [1], n=2)
        report = verify_theorems(ring)
        results = _results(report)
        assert report.passed
        assert results["split_factor_product"].detail == SplitCase.SQUARE.value
        assert results["crt_product"].checked > 1000

    def test_non_square(self):
        """Test phi = x^2 + 1 is irreducible and the census passes."""
        ring = ring_from_digits(3, 1, 1, 2, [2], n=2)
        assert ring.phi_irreducible
        assert ring.phi == ring.field.poly([1, 0, 1])
        report = verify_theorems(ring)
        assert report.passed
        assert _results(report)["split_factor_product"].detail == SplitCase.NON_SQUARE.value


class TestCubeSplit:
    """x^(3 p^s) - delta in characteristic 2."""

    def test_cube_2_mod_3(self):
        """Test the linear times quadratic-trace split over F_2."""
        ring = ring_from_digits(2, 1, 1, 2, [1], n=3)
        report = verify_theorems(ring)
        assert report.passed
        assert _results(report)["split_factor_product"].detail == SplitCase.CUBE_2_MOD_3.value

    def test_quadratic_trace_chain(self):
        """Test delta~ = 1 + u gives a chain with |<phi^i>| = (2^2)^(4 - i)."""
        ring = ring_from_digits(2, 1, 1, 2, [1, 1], kind=ModulusKind.QUADRATIC_TRACE)
        assert len(enumerate_ideals(ring)) == 2 * 2 + 1
        verdict = chain_check(ring)
        assert verdict.is_chain
        assert verdict.card_exponents == [8, 6, 4, 2, 0]

    def test_cube_1_mod_3(self):
        """Test the three-factor plan over F_4."""
        ring = ring_from_digits(2, 2, 1, 2, [1], n=3)
        plan = plan_split(ring)
        assert plan.case == SplitCase.CUBE_1_MOD_3
        assert plan.b * plan.c == 1
        assert plan.b + plan.c == ring.field.scalar(-1)
        assert factors_multiply_back(ring, plan.factors)


class TestUnitCriteria:
    """Unit and n-th power criteria agree with exhaustive search."""

    @pytest.mark.parametrize(
        "p, s, t, delta",
        [(2, 1, 2, [1, 1]), (3, 1, 2, [1, 1]), (2, 1, 3, [1, 0, 1]), (3, 0, 3, [2, 1])],
    )
    def test_criteria(self, p, s, t, delta):
        """Test element-by-element agreement on rings of at most 3^9 elements."""
        report = verify_theorems(ring_from_digits(p, 1, s, t, delta))
        results = _results(report)
        assert results["unit_criterion"].passed
        assert results["unit_criterion"].checked > 0
        assert results["nth_power_criterion"].passed


class TestDeterminism:
    """Two verify runs print byte-identical reports."""

    def test_verify_twice(self, capsys):
        """Test the JSON document does not change between runs."""
        argv = ["verify", "--p", "2,3", "--s", "1", "--t", "2", "--n", "1"]
        assert main(argv) == EXIT_OK
        first = capsys.readouterr().out
        assert main(argv) == EXIT_OK
        second = capsys.readouterr().out
        assert first == second
        assert json.loads(first)["passed"] is True

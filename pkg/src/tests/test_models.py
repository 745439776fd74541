"""Tests for the report and record models."""

import pytest
from pydantic import ValidationError

from src.models import (
    AssertionResult,
    CensusReport,
    IdealRecord,
    IdealTypeRecord,
    LemmaCase,
    OutputFormat,
    RingDescriptor,
    TorsionProfile,
    TypeParameters,
)


@pytest.fixture
def descriptor():
    return RingDescriptor(
        p=2,
        m=1,
        s=1,
        t=1,
        n=1,
        kind="constacyclic",
        field_modulus=[1, 1],
        delta=[[1]],
        delta00=[1],
        phi=[[1], [1]],
        phi_irreducible=True,
        nilp_index=2,
        dim=2,
    )


class TestCensusReport:
    """Test the pass verdict of a census report."""

    def test_informational_failures_do_not_count(self, descriptor):
        """Test a failing informational assertion leaves the report passed."""
        report = CensusReport(
            ring=descriptor,
            assertions=[
                AssertionResult(name="span_closure", passed=True, checked=3),
                AssertionResult(name="printed_form_L", passed=False, informational=True),
            ],
        )
        assert report.passed

    def test_failure_fails_report(self, descriptor):
        """Test a failing regular assertion fails the report."""
        report = CensusReport(
            ring=descriptor,
            assertions=[AssertionResult(name="torsion_product", passed=False, failures=1)],
        )
        assert not report.passed

    def test_empty_report_passes(self, descriptor):
        """Test a report without assertions passes vacuously."""
        assert CensusReport(ring=descriptor).passed


class TestRecords:
    """Test field validation of the record models."""

    def test_type_tag_range(self):
        """Test tags outside 1..8 are rejected."""
        assert IdealTypeRecord(tag=8).tag == 8
        with pytest.raises(ValidationError):
            IdealTypeRecord(tag=9)
        with pytest.raises(ValidationError):
            IdealTypeRecord(tag=0)

    def test_ideal_record_defaults(self):
        """Test an ideal record needs only its sizes."""
        record = IdealRecord(dim=0, card_exponent=0)
        assert record.generators == []
        assert record.type is None

    def test_negative_dimension(self):
        """Test dimensions cannot be negative."""
        with pytest.raises(ValidationError):
            IdealRecord(dim=-1, card_exponent=0)

    def test_descriptor_defaults(self, descriptor):
        """Test optional descriptor fields default to None or empty."""
        assert descriptor.k is None
        assert descriptor.is_chain is None
        assert descriptor.phi_factors == []
        assert not descriptor.closed_forms_apply


class TestTypedParameters:
    """Test torsion profiles and type parameters."""

    def test_profile(self):
        """Test list view and total of a torsion profile."""
        profile = TorsionProfile(T0=3, T1=2, T2=0)
        assert profile.as_list() == [3, 2, 0]
        assert profile.total == 5

    def test_profile_rejects_negative_degree(self):
        """Test torsional degrees are non-negative."""
        with pytest.raises(ValidationError):
            TorsionProfile(T0=-1, T1=0, T2=0)

    def test_profile_is_frozen(self):
        """Test profiles cannot be modified after construction."""
        profile = TorsionProfile(T0=1, T1=1, T2=1)
        with pytest.raises(ValidationError):
            profile.T0 = 2

    def test_sort_key(self):
        """Test absent parameters sort before present ones."""
        assert TypeParameters(a=2, L=1).sort_key() == [2, -1, -1, -1, -1, -1, 1, -1]
        assert TypeParameters().sort_key() < TypeParameters(a=0).sort_key()


class TestLemmaCase:
    """Test agreement of a lemma case."""

    @pytest.mark.parametrize("closed, oracle, agrees", [(2, 2, True), (1, 0, False)])
    def test_agrees(self, closed, oracle, agrees):
        """Test agreement compares the closed form with the oracle only."""
        case = LemmaCase(
            lemma="type5",
            params={"a": 2, "t0": 0, "t1": 0},
            units={"h0": "1", "h1": None},
            closed_form=closed,
            oracle=oracle,
            printed_form=5,
        )
        assert case.agrees is agrees


class TestOutputFormat:
    """Test the output format enum."""

    def test_values(self):
        """Test formats parse from their command-line names."""
        assert OutputFormat("json") is OutputFormat.JSON
        assert {fmt.value for fmt in OutputFormat} == {"json", "csv", "text", "yaml"}

"""Import/export of ring descriptors, ideal records and reports with versioned schema support."""

import csv
import io
import json
from typing import Any, Dict, List, Optional, Sequence

import galois
import yaml
from pydantic import BaseModel, Field

from src.classification import predicts_chain
from src.exceptions import InvalidInput
from src.field import is_zero_poly
from src.ideals import Ideal, span
from src.logger import get_logger
from src.models import (
    CensusReport,
    FactorRecord,
    IdealRecord,
    IdealTypeRecord,
    RingDescriptor,
    TableRow,
    TypeParameters,
)
from src.parameters import in_t3_family
from src.parsing import parse_element
from src.quotient_ring import ModulusKind, QuotElement, RingContext

logger = get_logger(__name__)

# Schema version constants
CURRENT_SCHEMA_VERSION = "1.0.0"
SUPPORTED_SCHEMA_VERSIONS = ["1.0.0"]


class ExportSchemaMetadata(BaseModel):
    """Metadata for the export schema itself."""

    schema_version: str = Field(
        default=CURRENT_SCHEMA_VERSION, description="Version of the export schema"
    )
    exported_by: str = Field(default="chainring", description="Producing tool")
    total_records: int = Field(default=1, description="Number of records in this export")


# ---------------------------------------------------------------------- text forms


def element_text(a: QuotElement) -> str:
    return str(a)


def poly_text(ring: RingContext, f: galois.Poly) -> str:
    return ring.field.format_poly(f)


# ---------------------------------------------------------------------- records


def describe_ring(ring: RingContext) -> RingDescriptor:
    """Ring descriptor with the derived constants and the factorization of phi."""
    field_ctx = ring.field
    factors = [
        FactorRecord(factor=field_ctx.poly_digits(f), multiplicity=mult)
        for f, mult in field_ctx.factorize(ring.phi)
    ]
    alpha0 = None
    if ring.spec.kind is ModulusKind.QUADRATIC_TRACE:
        alpha0 = field_ctx.digits(ring.alpha0)
    return RingDescriptor(
        p=ring.p,
        m=ring.m,
        s=ring.s,
        t=ring.t,
        n=ring.D,
        kind=ring.spec.kind.value,
        field_modulus=field_ctx.modulus_digits,
        delta=ring.spec.delta.to_json(),
        delta00=field_ctx.digits(ring.delta00),
        phi=field_ctx.poly_digits(ring.phi),
        phi_irreducible=ring.phi_irreducible,
        phi_factors=factors,
        k=ring.k,
        nilp_index=ring.nilp_index,
        dim=ring.dim,
        is_chain=predicts_chain(ring),
        closed_forms_apply=in_t3_family(ring),
        alpha0=alpha0,
    )


def type_record(
    ring: RingContext, kind, closed_form: Optional[int] = None, flagged: bool = False
) -> IdealTypeRecord:
    def digits(h):
        if h is None or is_zero_poly(h):
            return None
        return ring.field.poly_digits(h)

    return IdealTypeRecord(
        tag=int(kind.tag),
        a=kind.a,
        b=kind.b,
        c=kind.c,
        t0=kind.t0,
        t1=kind.t1,
        t2=kind.t2,
        h0=digits(kind.h0),
        h1=digits(kind.h1),
        h2=digits(kind.h2),
        L=kind.L,
        M=kind.M,
        closed_form=closed_form,
        flagged=flagged,
    )


def ideal_record(
    ideal: Ideal,
    torsion: Optional[List[int]] = None,
    kind=None,
    closed_form: Optional[int] = None,
    flagged: bool = False,
) -> IdealRecord:
    """Record of an ideal; generators come from the classification when there is one."""
    if kind is not None:
        generators = kind.generators
    elif ideal.generators:
        generators = list(ideal.generators)
    else:
        generators = ideal.elements_of_basis()
    return IdealRecord(
        generators=[element_text(g) for g in generators],
        dim=ideal.dim,
        card_exponent=ideal.ring.m * ideal.dim,
        torsion=torsion,
        type=type_record(ideal.ring, kind, closed_form, flagged) if kind is not None else None,
    )


def table_rows(report: CensusReport) -> List[TableRow]:
    """One row per ideal, ordered by tag, parameters, then generators."""
    keyed = []
    for record in report.ideals:
        kind = record.type
        row = TableRow(
            tag=kind.tag if kind else None,
            a=kind.a if kind else None,
            b=kind.b if kind else None,
            c=kind.c if kind else None,
            t0=kind.t0 if kind else None,
            t1=kind.t1 if kind else None,
            t2=kind.t2 if kind else None,
            L=kind.L if kind else None,
            M=kind.M if kind else None,
            torsion=record.torsion or [],
            card_exponent=record.card_exponent,
        )
        params = TypeParameters(**row.model_dump(include=set(TypeParameters.model_fields)))
        key = (
            row.tag if row.tag is not None else 99,
            params.sort_key(),
            record.dim,
            record.generators,
        )
        keyed.append((key, row))
    return [row for _, row in sorted(keyed, key=lambda pair: pair[0])]


# ---------------------------------------------------------------------- import/export


class ReportExporter:
    """Utilities for exporting records and reports with versioned schema support."""

    @staticmethod
    def wrap(key: str, payload: Any, total_records: int = 1) -> Dict[str, Any]:
        """Attach the schema header to a payload."""
        schema = ExportSchemaMetadata(total_records=total_records)
        if isinstance(payload, BaseModel):
            payload = payload.model_dump(mode="json")
        elif isinstance(payload, list):
            payload = [
                item.model_dump(mode="json") if isinstance(item, BaseModel) else item
                for item in payload
            ]
        return {"schema_version": schema.schema_version, "schema": schema.model_dump(), key: payload}

    @staticmethod
    def to_json(document: Dict[str, Any]) -> str:
        return json.dumps(document, indent=2, sort_keys=True) + "\n"

    @staticmethod
    def to_yaml(document: Dict[str, Any]) -> str:
        return yaml.safe_dump(document, sort_keys=False, default_flow_style=False)

    @staticmethod
    def table_columns(t: int) -> List[str]:
        return ["tag", "a", "b", "c", "t0", "t1", "t2", "L", "M"] + [
            f"T{i}" for i in range(t)
        ] + ["card_exponent"]

    @staticmethod
    def table_values(row: TableRow, t: int) -> List[str]:
        def cell(value):
            return "" if value is None else str(value)

        torsion = list(row.torsion) + [None] * (t - len(row.torsion))
        values = [row.tag, row.a, row.b, row.c, row.t0, row.t1, row.t2, row.L, row.M]
        return [cell(v) for v in values] + [cell(v) for v in torsion] + [str(row.card_exponent)]

    @staticmethod
    def to_csv(rows: Sequence[TableRow], t: int) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(ReportExporter.table_columns(t))
        for row in rows:
            writer.writerow(ReportExporter.table_values(row, t))
        return buffer.getvalue()

    @staticmethod
    def to_text_table(rows: Sequence[TableRow], t: int) -> str:
        header = ReportExporter.table_columns(t)
        body = [ReportExporter.table_values(row, t) for row in rows]
        widths = [
            max([len(header[i])] + [len(line[i]) for line in body]) for i in range(len(header))
        ]
        lines = ["  ".join(h.rjust(w) for h, w in zip(header, widths))]
        for line in body:
            lines.append("  ".join(v.rjust(w) for v, w in zip(line, widths)))
        return "\n".join(lines) + "\n"

    @staticmethod
    def census_summary(report: CensusReport) -> str:
        """Human-readable assertion table for a census."""
        ring = report.ring
        lines = [
            f"ring p={ring.p} m={ring.m} s={ring.s} t={ring.t} n={ring.n} kind={ring.kind} "
            f"delta={ring.delta}: {report.ideal_count} ideals",
        ]
        for result in report.assertions:
            status = "pass" if result.passed else "FAIL"
            if result.informational:
                status += " (informational)"
            line = f"  {result.name}: {status} [{result.checked} checked]"
            if result.counterexample:
                line += f" first failure: {result.counterexample}"
            lines.append(line)
        return "\n".join(lines) + "\n"

    @staticmethod
    def descriptor_text(descriptor: RingDescriptor) -> str:
        data = descriptor.model_dump()
        return "\n".join(f"{key}: {value}" for key, value in data.items()) + "\n"


def check_schema_version(data: Dict[str, Any]) -> str:
    schema_version = data.get("schema_version", data.get("schema", {}).get("schema_version"))
    if schema_version not in SUPPORTED_SCHEMA_VERSIONS:
        raise InvalidInput(
            f"Unsupported schema version: {schema_version}. "
            f"Supported versions: {SUPPORTED_SCHEMA_VERSIONS}"
        )
    return schema_version


def export_ideal_record(record: IdealRecord) -> Dict[str, Any]:
    return ReportExporter.wrap("ideal", record)


def import_ideal_record(data: Dict[str, Any], ring: RingContext) -> Ideal:
    """Re-parse the generators of an exported ideal record and span them."""
    schema_version = check_schema_version(data)
    record = IdealRecord(**data["ideal"])
    generators = [parse_element(ring, text) for text in record.generators]
    ideal = span(ring, generators)
    if ideal.dim != record.dim:
        raise InvalidInput(
            f"record claims dimension {record.dim}, generators span dimension {ideal.dim}"
        )
    logger.debug("Imported ideal record", schema_version=schema_version, dim=ideal.dim)
    return ideal

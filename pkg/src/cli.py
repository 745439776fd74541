"""Command-line front end: ring descriptors, ideal records, census sweeps, tables and splits."""

import argparse
import itertools
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, Field

from src.classification import classify_t3
from src.config import update_settings
from src.decomposition import CrtSplit, plan_split
from src.exceptions import ChainRingError, InvalidInput, TooLarge, UnsupportedParameter
from src.field import FieldContext
from src.ideals import span
from src.logger import get_logger, setup_logging
from src.models import CensusReport, LemmaSweepReport, OutputFormat, SplitRecord
from src.oracle import closed_form_for, is_flagged, sweep_parameter_lemmas, verify_theorems
from src.parameters import in_t3_family, lemmas_for
from src.parsing import delta_text, parse_delta, parse_generators, parse_int_list
from src.quotient_ring import ModulusKind, RingContext, ring_from_digits
from src.serialization import (
    ReportExporter,
    describe_ring,
    export_ideal_record,
    ideal_record,
    import_ideal_record,
    table_rows,
)

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_ASSERTION_FAILED = 1
EXIT_ERROR = 2


class RingParameters(BaseModel):
    """Plain parameters of one ring R^t[x]/<f(x)>."""

    p: int
    m: int = 1
    s: int = 1
    t: int = 1
    n: int = 1
    kind: ModulusKind = ModulusKind.CONSTACYCLIC
    delta: List[List[int]] = Field(default_factory=lambda: [[1]])
    field_modulus: Optional[List[int]] = None

    def build(self) -> RingContext:
        return ring_from_digits(
            self.p,
            self.m,
            self.s,
            self.t,
            self.delta,
            n=self.n,
            kind=self.kind,
            field_modulus=self.field_modulus,
        )

    def label(self) -> str:
        return (
            f"p={self.p} m={self.m} s={self.s} t={self.t} n={self.n} "
            f"kind={self.kind.value} delta={delta_text(self.delta)}"
        )


class CommandConfig(BaseModel):
    """Everything a subcommand needs, validated before any computation."""

    command: str
    ring: Optional[RingParameters] = None
    grid: List[RingParameters] = Field(default_factory=list)
    generators: List[str] = Field(default_factory=list)
    input_path: Optional[Path] = None
    output_format: OutputFormat = OutputFormat.JSON
    output_path: Optional[Path] = None
    cap: Optional[int] = None
    workers: int = 1
    lemmas: bool = False


# ---------------------------------------------------------------------- parsing


def _add_ring_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--p", required=True, help="Characteristic")
    parser.add_argument("--m", default="1", help="Extension degree")
    parser.add_argument("--s", default="1", help="Exponent of p in the code length")
    parser.add_argument("--t", default="1", help="Nilpotency index of u")
    parser.add_argument("--n", default="1", help="Base degree of x^(n p^s) - delta")
    parser.add_argument(
        "--kind",
        choices=[kind.value for kind in ModulusKind],
        default=ModulusKind.CONSTACYCLIC.value,
    )
    parser.add_argument(
        "--modulus", default=None, help="Ascending digits of the field modulus, e.g. 1,1,1"
    )
    parser.add_argument(
        "--cap", type=int, default=None, help="Largest ring cardinality for the census"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chainring",
        description="Ideals of R^t[x]/<f(x)> over the chain ring R^t = F_{p^m}[u]/<u^t>",
    )
    parser.add_argument("--log-level", default=None, help="Log level (default from settings)")
    parser.add_argument("--log-format", choices=["json", "text"], default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    single = {
        "ring": ("Describe a ring", ["json", "yaml", "text"]),
        "ideal": ("Span, measure and classify an ideal", ["json", "yaml", "text"]),
        "table": ("Classification table of every ideal", ["csv", "json", "yaml", "text"]),
        "split": ("CRT decomposition of x^(n p^s) - delta", ["json", "yaml", "text"]),
    }
    for name, (help_text, formats) in single.items():
        command = sub.add_parser(name, help=help_text)
        _add_ring_arguments(command)
        command.add_argument("--delta", default="1", help="Digit groups, one per u-power")
        command.add_argument("--format", choices=formats, default=formats[0])
        command.add_argument("--output", default=None, help="Write to a file instead of stdout")
        if name == "ideal":
            command.add_argument(
                "--gen", action="append", default=[], help="Generator text; repeatable"
            )
            command.add_argument("--input", default=None, help="Exported ideal record (JSON)")

    verify = sub.add_parser("verify", help="Census and assertion sweep over a parameter grid")
    _add_ring_arguments(verify)
    verify.add_argument(
        "--delta",
        default=None,
        help="Semicolon-separated ring constants; defaults to a grid per point",
    )
    verify.add_argument("--format", choices=["json", "yaml", "text"], default="json")
    verify.add_argument("--output", default=None)
    verify.add_argument("--workers", type=int, default=1, help="Parallel grid workers")
    verify.add_argument(
        "--lemmas", action="store_true", help="Also sweep the closed forms on t = 3 rings"
    )
    return parser


def default_deltas(p: int, m: int, t: int, modulus: Optional[List[int]]) -> List[List[List[int]]]:
    """delta_0 in {1, primitive} combined with u-parts 0 and u^j for 1 <= j < t."""
    field_ctx = FieldContext(p, m, modulus)
    constants = [[1] + [0] * (m - 1)]
    primitive = field_ctx.digits(field_ctx.GF.primitive_element)
    if primitive not in constants:
        constants.append(primitive)
    deltas = []
    for constant in constants:
        deltas.append([constant])
        for j in range(1, t):
            deltas.append([constant] + [[0]] * (j - 1) + [[1]])
    return deltas


def config_from_args(args: argparse.Namespace) -> CommandConfig:
    """Validate the parsed arguments into a CommandConfig."""
    kind = ModulusKind(args.kind)
    modulus = parse_int_list(args.modulus) if args.modulus else None
    fmt = OutputFormat(args.format)
    output = Path(args.output) if args.output else None

    if args.command == "verify":
        grid = []
        axes = [parse_int_list(getattr(args, name)) for name in ("p", "m", "s", "t", "n")]
        for p, m, s, t, n in itertools.product(*axes):
            if args.delta:
                deltas = [parse_delta(text, p) for text in args.delta.split(";") if text.strip()]
            else:
                deltas = default_deltas(p, m, t, modulus)
            for delta in deltas:
                grid.append(
                    RingParameters(
                        p=p, m=m, s=s, t=t, n=n, kind=kind, delta=delta, field_modulus=modulus
                    )
                )
        return CommandConfig(
            command="verify",
            grid=grid,
            output_format=fmt,
            output_path=output,
            cap=args.cap,
            workers=max(1, args.workers),
            lemmas=args.lemmas,
        )

    values = {}
    for name in ("p", "m", "s", "t", "n"):
        parsed = parse_int_list(getattr(args, name))
        if len(parsed) != 1:
            raise InvalidInput(f"--{name} takes a single integer for '{args.command}'")
        values[name] = parsed[0]
    ring = RingParameters(
        **values, kind=kind, delta=parse_delta(args.delta, values["p"]), field_modulus=modulus
    )
    return CommandConfig(
        command=args.command,
        ring=ring,
        generators=getattr(args, "gen", []),
        input_path=Path(args.input) if getattr(args, "input", None) else None,
        output_format=fmt,
        output_path=output,
        cap=args.cap,
    )


# ---------------------------------------------------------------------- rendering


def render(document: Dict[str, Any], fmt: OutputFormat, text: str) -> str:
    if fmt is OutputFormat.JSON:
        return ReportExporter.to_json(document)
    if fmt is OutputFormat.YAML:
        return ReportExporter.to_yaml(document)
    return text


def emit(cfg: CommandConfig, content: str) -> None:
    if cfg.output_path is None:
        sys.stdout.write(content)
        return
    cfg.output_path.write_text(content, encoding="utf-8")
    logger.info("Output written", path=str(cfg.output_path))


# ---------------------------------------------------------------------- commands


def cmd_ring_describe(cfg: CommandConfig) -> int:
    ring = cfg.ring.build()
    descriptor = describe_ring(ring)
    document = ReportExporter.wrap("ring", descriptor)
    emit(cfg, render(document, cfg.output_format, ReportExporter.descriptor_text(descriptor)))
    return EXIT_OK


def cmd_ideal(cfg: CommandConfig) -> int:
    ring = cfg.ring.build()
    if cfg.input_path is not None:
        ideal = import_ideal_record(json.loads(cfg.input_path.read_text(encoding="utf-8")), ring)
        generators = list(ideal.generators)
    else:
        generators = parse_generators(ring, cfg.generators)
        ideal = span(ring, generators)

    torsions = ideal.torsions() if ring.phi_irreducible else None
    kind, value, flagged = None, None, False
    if in_t3_family(ring):
        kind = classify_t3(ideal)
        lemmas = lemmas_for(ring)
        value = closed_form_for(lemmas, kind)
        flagged = is_flagged(lemmas, kind)
    record = ideal_record(ideal, torsions, kind, value, flagged)

    lines = [f"generators: {', '.join(record.generators) or '0'}"]
    lines.append(f"dim: {record.dim}  card_exponent: {record.card_exponent}")
    if torsions is not None:
        lines.append(f"torsion: {torsions}")
    if record.type is not None:
        params = record.type.model_dump(exclude={"h0", "h1", "h2"}, exclude_none=True)
        lines.append(f"type: {params}")
    text = "\n".join(lines) + "\n"
    emit(cfg, render(export_ideal_record(record), cfg.output_format, text))
    return EXIT_OK


def cmd_table(cfg: CommandConfig) -> int:
    ring = cfg.ring.build()
    report = verify_theorems(ring)
    rows = table_rows(report)
    if cfg.output_format is OutputFormat.CSV:
        content = ReportExporter.to_csv(rows, ring.t)
    else:
        document = ReportExporter.wrap("rows", rows, total_records=len(rows))
        content = render(document, cfg.output_format, ReportExporter.to_text_table(rows, ring.t))
    emit(cfg, content)
    return EXIT_OK if report.passed else EXIT_ASSERTION_FAILED


def cmd_split(cfg: CommandConfig) -> int:
    ring = cfg.ring.build()
    plan = plan_split(ring)
    record = SplitRecord(
        case=plan.case.value,
        ring=describe_ring(ring),
        delta_tilde=plan.delta_tilde.to_json() if plan.delta_tilde is not None else None,
        b=ring.field.digits(plan.b) if plan.b is not None else None,
        c=ring.field.digits(plan.c) if plan.c is not None else None,
    )
    if plan.splits:
        split = CrtSplit(ring, plan)
        record.factors = [describe_ring(comp) for comp in split.components]
        record.bezout = split.idempotent_coords()

    lines = [f"case: {record.case}"]
    for spec in plan.factors:
        lines.append(f"factor: {spec.describe()}")
    text = "\n".join(lines) + "\n"
    emit(cfg, render(ReportExporter.wrap("split", record), cfg.output_format, text))
    return EXIT_OK


def _verify_point(
    point: RingParameters, cap: Optional[int], lemmas: bool
) -> Tuple[Optional[CensusReport], Optional[LemmaSweepReport], Optional[str]]:
    """One grid point; returns a skip notice instead of raising for out-of-range points."""
    if cap is not None:
        update_settings(enumeration_cap=cap)
    try:
        ring = point.build()
        report = verify_theorems(ring)
    except (TooLarge, UnsupportedParameter) as exc:
        return None, None, f"{point.label()}: {type(exc).__name__}: {exc}"
    sweep = sweep_parameter_lemmas(ring) if lemmas and in_t3_family(ring) else None
    return report, sweep, None


def run_grid(
    grid: Sequence[RingParameters], cap: Optional[int], workers: int, lemmas: bool
) -> List[Tuple[Optional[CensusReport], Optional[LemmaSweepReport], Optional[str]]]:
    """Evaluate the grid, in parallel when asked; results stay in grid order."""
    if workers <= 1 or len(grid) <= 1:
        return [_verify_point(point, cap, lemmas) for point in grid]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(
            pool.map(_verify_point, grid, itertools.repeat(cap), itertools.repeat(lemmas))
        )


def cmd_verify(cfg: CommandConfig) -> int:
    results = run_grid(cfg.grid, cfg.cap, cfg.workers, cfg.lemmas)
    reports, sweeps, skipped = [], [], []
    for report, sweep, notice in results:
        if notice is not None:
            logger.warning("Grid point skipped", notice=notice)
            skipped.append(notice)
            continue
        reports.append(report)
        if sweep is not None:
            sweeps.append(sweep)

    passed = all(report.passed for report in reports) and all(
        not sweep.mismatches for sweep in sweeps
    )
    document = ReportExporter.wrap("reports", reports, total_records=len(reports))
    document["lemma_sweeps"] = [sweep.model_dump(mode="json") for sweep in sweeps]
    document["skipped"] = skipped
    document["passed"] = passed

    text = "".join(ReportExporter.census_summary(report) for report in reports)
    for sweep in sweeps:
        text += (
            f"lemma sweep: {sweep.cases} cases, {len(sweep.mismatches)} mismatches, "
            f"{sweep.flagged} flagged, {sweep.printed_disagreements} printed-form disagreements\n"
        )
    for notice in skipped:
        text += f"skipped: {notice}\n"
    emit(cfg, render(document, cfg.output_format, text))
    logger.info("Verification finished", points=len(cfg.grid), skipped=len(skipped), passed=passed)
    return EXIT_OK if passed else EXIT_ASSERTION_FAILED


COMMANDS = {
    "ring": cmd_ring_describe,
    "ideal": cmd_ideal,
    "verify": cmd_verify,
    "table": cmd_table,
    "split": cmd_split,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(level=args.log_level, fmt=args.log_format)
    try:
        cfg = config_from_args(args)
        if cfg.cap is not None:
            update_settings(enumeration_cap=cfg.cap)
        logger.debug("Running command", command=cfg.command)
        return COMMANDS[cfg.command](cfg)
    except ChainRingError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

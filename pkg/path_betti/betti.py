import csv
import io
import json
import sys
from typing import Any, List, Mapping

import click

from .types import (
    EXIT_RESOURCE,
    EXIT_VERIFICATION,
    MAX_SUBSET_BITS_ENV,
    DEFAULT_MAX_SUBSET_BITS,
    BettiTable,
    DomainError,
    OutputRecord,
    PathFamilySpec,
    ResourceLimitError,
)
from .methods import METHODS, ComputeOptions
from .params import (
    add_family_options,
    add_field_option,
    family_from_kwargs,
    validate_int_list,
)
from .algebra.paths import build_path_complex
from .algebra.simplicial import facet_ideal_generators

CSV_COLUMNS = ["kind", "n", "t", "i", "j", "beta", "method"]
BOTH = "both"
MAX_GENERATORS_SHOWN = 12


def _json_dump(v: Any) -> str:
    return json.dumps(v, indent=2)


def add_global_betti_options(command: click.Command):
    add_family_options(command)
    add_field_option(command)
    command.params.append(click.Option(
        ["--method"], type=click.Choice(sorted(METHODS) + [BOTH]), default=BOTH, show_default=True))
    command.params.append(click.Option(
        ["--format", "output_format"], type=click.Choice(["json", "csv", "pretty"]), default="json", show_default=True))
    command.params.append(click.Option(
        ["--vertices"], metavar="V1,V2,...", callback=validate_int_list,
        help="Restrict to the induced subcollection on these vertices."))
    command.params.append(click.Option(
        ["--workers"], type=click.IntRange(min=1), default=1, show_default=True,
        help="Processes used by the oracle."))
    command.params.append(click.Option(
        ["--max-subset-bits", "max_bits"], type=click.IntRange(min=0), envvar=MAX_SUBSET_BITS_ENV,
        default=DEFAULT_MAX_SUBSET_BITS, show_default=True, help="Oracle vertex cap."))


def render_betti_diagram(table: BettiTable) -> List[str]:
    """Macaulay-style diagram: column i, row j - i, with β_{0,0} = 1."""
    pd, reg = table.projective_dimension, table.regularity
    cells = {(0, 0): 1}
    for (i, j), value in table.entries.items():
        cells[(i, j - i)] = value
    width = max(len(str(v)) for v in cells.values()) + 1
    columns = range(pd + 1)
    totals = [sum(v for (i, _), v in cells.items() if i == col) for col in columns]
    label = max(len("total:"), len(f"{reg}:"))
    lines = [" " * label + "".join(str(col).rjust(width) for col in columns)]
    lines.append("total:".rjust(label) + "".join(str(v).rjust(width) for v in totals))
    for row in range(reg + 1):
        values = [cells.get((col, row)) for col in columns]
        lines.append(f"{row}:".rjust(label) + "".join(("." if v is None else str(v)).rjust(width) for v in values))
    return lines


def _pretty(record: OutputRecord, spec: PathFamilySpec, table: BettiTable) -> str:
    generators = facet_ideal_generators(build_path_complex(spec))
    shown = ", ".join(generators[:MAX_GENERATORS_SHOWN])
    if len(generators) > MAX_GENERATORS_SHOWN:
        shown += ", ..."
    lines = [
        f"{spec} p={record.p} d={record.d} char={record.characteristic} method={record.method}",
        f"I = ({shown})",
    ]
    if record.vertices is not None:
        lines.append(f"restricted to vertices {', '.join(map(str, record.vertices))}")
    lines.append("")
    lines.extend(render_betti_diagram(table))
    lines.append("")
    lines.append(f"pd = {record.pd}, reg = {record.reg}")
    for i, j, oracle, closed in record.diff or ():
        lines.append(f"MISMATCH beta_{i},{j}: oracle {oracle}, closed {closed}")
    return "\n".join(lines)


def _csv(record: OutputRecord) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for i, j, beta, method in record.entries:
        writer.writerow([record.kind, record.n, record.t, i, j, beta, method])
    return buffer.getvalue().rstrip("\n")


def betti_handler(kwargs: Mapping):
    spec = family_from_kwargs(kwargs)
    field = kwargs["field"]
    options = ComputeOptions(
        workers=kwargs["workers"], max_bits=kwargs["max_bits"], vertices=kwargs.get("vertices"),
    )
    method = kwargs["method"]
    names = sorted(METHODS) if method == BOTH else [method]

    tables = {}
    timing_ms = 0.0
    try:
        for name in names:
            tables[name], elapsed = METHODS[name].timed(spec, field, options)
            timing_ms += elapsed
    except ResourceLimitError as e:
        click.echo(f"Resource limit: {e}", err=True)
        sys.exit(EXIT_RESOURCE)
    except DomainError as e:
        raise click.UsageError(str(e))

    diff = None
    if method == BOTH:
        table = tables["oracle"]
        diff = table.diff(tables["closed"])
    else:
        table = tables[method]
    record = OutputRecord.from_table(
        spec, field, method, table, timing_ms=timing_ms, diff=diff, vertices=options.vertices,
    )

    output_format = kwargs["output_format"]
    if output_format == "json":
        click.echo(_json_dump(record.to_payload()))
    elif output_format == "csv":
        click.echo(_csv(record))
    else:
        click.echo(_pretty(record, spec, table))

    if diff:
        click.echo(f"Oracle and closed form disagree in {len(diff)} entries", err=True)
        sys.exit(EXIT_VERIFICATION)

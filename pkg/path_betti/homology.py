import json
import sys
from typing import Any, Dict, Mapping

import click

from .types import (
    DEFAULT_MAX_SUBSET_BITS,
    EXIT_RESOURCE,
    EXIT_VERIFICATION,
    MAX_SUBSET_BITS_ENV,
    DomainError,
    RunSequence,
)
from .params import (
    add_family_options,
    add_field_option,
    family_from_kwargs,
    validate_int_list,
)
from .algebra.betti import homology_cycle_complement, homology_run_sequence
from .algebra.chains import reduced_homology_dims
from .algebra.paths import build_path_complex, build_run_complement
from .algebra.simplicial import complement


def _json_dump(v: Any) -> str:
    return json.dumps(v, indent=2)


def add_global_homology_options(command: click.Command):
    add_family_options(command, n_required=False)
    add_field_option(command)
    command.params.append(click.Option(
        ["--runs"], metavar="S1,S2,...", callback=validate_int_list,
        help="Run lengths of E(s1,...,sr); otherwise the complement of the whole cycle."))
    command.params.append(click.Option(
        ["--explicit"], is_flag=True, help="Also compute boundary-matrix homology and compare."))
    command.params.append(click.Option(
        ["--max-subset-bits", "max_bits"], type=click.IntRange(min=0), envvar=MAX_SUBSET_BITS_ENV,
        default=DEFAULT_MAX_SUBSET_BITS, show_default=True, help="Vertex cap for --explicit."))


def homology_handler(kwargs: Mapping):
    t = kwargs["t"]
    field = kwargs["field"]
    report: Dict[str, Any] = {"t": t}
    try:
        if kwargs.get("runs") is not None:
            seq = RunSequence(kwargs["runs"])
            report["runs"] = list(seq.lengths)
            closed = homology_run_sequence(t, seq)

            def explicit_complex():
                return build_run_complement(seq, t)
        else:
            if kwargs.get("n") is None:
                raise click.UsageError("Give either --runs or --n")
            spec = family_from_kwargs(kwargs)
            if not spec.is_cycle:
                raise click.UsageError("The full complement is defined for cycles")
            report.update(kind=spec.kind, n=spec.n, p=spec.p, d=spec.d)
            closed = homology_cycle_complement(spec)

            def explicit_complex():
                complex = build_path_complex(spec)
                return complement(complex, complex.ambient)
    except DomainError as e:
        raise click.UsageError(str(e))

    report["characteristic"] = field.characteristic
    report["closed_form"] = closed.to_payload()
    agree = True
    if kwargs.get("explicit"):
        complex = explicit_complex()
        if len(complex.ambient) > kwargs["max_bits"]:
            click.echo(
                f"Resource limit: {len(complex.ambient)} vertices exceed the cap of {kwargs['max_bits']}",
                err=True,
            )
            sys.exit(EXIT_RESOURCE)
        explicit = reduced_homology_dims(complex, field)
        agree = explicit.matches(closed)
        report["explicit"] = explicit.to_payload()
        report["agree"] = agree

    click.echo(_json_dump(report))
    if not agree:
        click.echo("Closed form and explicit homology disagree", err=True)
        sys.exit(EXIT_VERIFICATION)

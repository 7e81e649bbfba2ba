"""The invariant matrix: oracle against closed forms, cell by cell."""

import json
import logging
import sys
from dataclasses import dataclass, asdict
from itertools import combinations_with_replacement
from typing import Any, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

import click

from .types import (
    CYCLE,
    DEFAULT_MAX_SUBSET_BITS,
    DEFAULT_PRIME,
    EXIT_RESOURCE,
    EXIT_VERIFICATION,
    LINE,
    MAX_SUBSET_BITS_ENV,
    RATIONALS,
    BettiTable,
    FieldSpec,
    PathFamilySpec,
    ResourceLimitError,
    RunSequence,
)
from .params import validate_characteristics, validate_range
from .algebra.betti import (
    betti_closed_cycle,
    betti_closed_line,
    betti_oracle,
    betti_top_degree,
    homology_cycle_complement,
    homology_run_sequence,
    nonzero_criterion,
    pd_reg,
)
from .algebra.chains import reduced_homology_dims
from .algebra.paths import build_path_complex, build_run_complement, vertex_count_of_runs
from .algebra.simplicial import complement

LOGGER = logging.getLogger(__name__)

PASS = "PASS"
FAIL = "FAIL"
NOTE = "NOTE"

# small cases where a formula disagreement is recorded rather than failed
BOUNDARY_CYCLES = {(3, 2), (4, 3)}


@dataclass(frozen=True)
class Cell:
    check: str
    status: str
    kind: str
    n: Optional[int] = None
    t: Optional[int] = None
    characteristic: int = 0
    i: Optional[int] = None
    j: Optional[int] = None
    runs: Optional[Tuple[int, ...]] = None
    detail: str = ""

    @property
    def failed(self) -> bool:
        return self.status == FAIL

    def __str__(self) -> str:
        parts = [self.status, self.check, self.kind]
        for name in ("n", "t", "characteristic", "i", "j"):
            value = getattr(self, name)
            if value is not None:
                parts.append(f"{'char' if name == 'characteristic' else name}={value}")
        if self.runs is not None:
            parts.append("runs=" + ",".join(map(str, self.runs)))
        if self.detail:
            parts.append(f"({self.detail})")
        return " ".join(parts)


def add_global_verify_options(command: click.Command):
    command.params.append(click.Option(["--max-n"], type=int, default=10, show_default=True))
    command.params.append(click.Option(
        ["--t-range"], default="2..5", show_default=True, metavar="A..B", callback=validate_range))
    command.params.append(click.Option(
        ["--char-list", "fields"], default=f"0,2,{DEFAULT_PRIME}", show_default=True, metavar="C1,C2,...",
        callback=validate_characteristics))
    command.params.append(click.Option(
        ["--max-run-vertices"], type=click.IntRange(min=0), default=None,
        help="Vertex budget for run sequences; defaults to --max-n."))
    command.params.append(click.Option(
        ["--max-subset-bits", "max_bits"], type=click.IntRange(min=0), envvar=MAX_SUBSET_BITS_ENV,
        default=DEFAULT_MAX_SUBSET_BITS, show_default=True, help="Oracle vertex cap."))
    command.params.append(click.Option(
        ["--format", "output_format"], type=click.Choice(["text", "json"]), default="text", show_default=True))


def _first_difference(left: BettiTable, right: BettiTable) -> Optional[Tuple[int, int, int, int]]:
    diff = left.diff(right)
    return diff[0] if diff else None


def _cycle_cells(
    spec: PathFamilySpec, fields: Sequence[FieldSpec], max_bits: Optional[int] = None
) -> Iterator[Cell]:
    n, t = spec.n, spec.t
    boundary = (n, t) in BOUNDARY_CYCLES
    reference = betti_oracle(spec, RATIONALS, max_bits=max_bits)

    def cell(check, ok, field=RATIONALS, i=None, j=None, detail="", soft=False):
        status = PASS if ok else (NOTE if soft else FAIL)
        return Cell(check, status, CYCLE, n, t, field.characteristic, i, j, None, detail)

    closed = betti_closed_cycle(spec)
    first = _first_difference(reference, closed)
    if first is None:
        yield cell("oracle-vs-closed", True, detail="boundary case" if boundary else "")
    else:
        i, j, oracle, formula = first
        detail = f"oracle {oracle}, closed {formula}"
        if boundary:
            LOGGER.warning("%s: closed form differs from the oracle at (%d, %d)", spec, i, j)
        yield cell("oracle-vs-closed", False, i=i, j=j, detail=detail, soft=boundary)

    i, value = betti_top_degree(spec)
    top = {key: v for key, v in reference.entries.items() if key[1] == n}
    yield cell("top-degree", top == {(i, n): value}, i=i, j=n,
               detail=f"formula {value}, oracle {sorted(top.items())}")

    violations = [
        (i, j) for i, j in reference.entries
        if j > t * i or (j < n and not nonzero_criterion(spec, i, j))
    ]
    if violations:
        for i, j in violations:
            yield cell("vanishing", False, i=i, j=j, detail="nonzero entry outside the criterion")
    else:
        yield cell("vanishing", True)

    expected = pd_reg(spec)
    observed = (reference.projective_dimension, reference.regularity)
    yield cell("pd-reg", expected == observed, detail=f"formula {expected}, oracle {observed}")

    whole = build_path_complex(spec)
    summary = homology_cycle_complement(spec)
    for field in fields:
        if not field.is_rational:
            other = betti_oracle(spec, field, max_bits=max_bits)
            first = _first_difference(reference, other)
            yield cell("field-independence", first is None, field,
                       i=first[0] if first else None, j=first[1] if first else None)
        explicit = reduced_homology_dims(complement(whole, whole.ambient), field)
        yield cell("complement-homology", explicit.matches(summary), field,
                   detail=f"formula {summary.to_payload()}, explicit {explicit.to_payload()}")


def _line_cells(spec: PathFamilySpec, max_bits: Optional[int] = None) -> Iterator[Cell]:
    reference = betti_oracle(spec, RATIONALS, max_bits=max_bits)
    first = _first_difference(reference, betti_closed_line(spec))
    detail = "boundary case" if spec.n == spec.t else ""
    if first is None:
        yield Cell("oracle-vs-closed", PASS, LINE, spec.n, spec.t, detail=detail)
    else:
        i, j, oracle, formula = first
        yield Cell("oracle-vs-closed", FAIL, LINE, spec.n, spec.t, i=i, j=j,
                   detail=f"oracle {oracle}, closed {formula}")


def run_sequences(t: int, max_vertices: int) -> Iterator[RunSequence]:
    """Every multiset of run lengths whose runs fit in ``max_vertices`` vertices."""
    longest = max_vertices - t + 1
    for r in range(1, max_vertices // t + 1):
        for lengths in combinations_with_replacement(range(longest, 0, -1), r):
            seq = RunSequence(lengths)
            if vertex_count_of_runs(seq, t) <= max_vertices:
                yield seq


def _run_cells(t: int, max_vertices: int) -> Iterator[Cell]:
    for seq in run_sequences(t, max_vertices):
        summary = homology_run_sequence(t, seq)
        explicit = reduced_homology_dims(build_run_complement(seq, t))
        yield Cell("run-homology", PASS if explicit.matches(summary) else FAIL, "runs", t=t,
                   runs=seq.lengths,
                   detail=f"formula {summary.to_payload()}, explicit {explicit.to_payload()}")


def iter_cells(
    max_n: int, t_range: Tuple[int, int], fields: Sequence[FieldSpec], max_run_vertices: int,
    max_bits: Optional[int] = None,
) -> Iterator[Cell]:
    t_lo, t_hi = max(t_range[0], 2), t_range[1]
    for t in range(t_lo, t_hi + 1):
        for n in range(max(3, t), max_n + 1):
            yield from _cycle_cells(PathFamilySpec(CYCLE, n, t), fields, max_bits)
        for n in range(t, max_n + 1):
            yield from _line_cells(PathFamilySpec(LINE, n, t), max_bits)
        yield from _run_cells(t, max_run_vertices)


def verify_handler(kwargs: Mapping):
    max_n = kwargs["max_n"]
    max_run_vertices = kwargs.get("max_run_vertices")
    if max_run_vertices is None:
        max_run_vertices = max_n
    cells: List[Cell] = []
    try:
        for cell in iter_cells(
            max_n, kwargs["t_range"], kwargs["fields"], max_run_vertices, kwargs.get("max_bits")
        ):
            cells.append(cell)
            if kwargs["output_format"] == "text":
                click.echo(str(cell))
    except ResourceLimitError as e:
        click.echo(f"Resource limit: {e}", err=True)
        sys.exit(EXIT_RESOURCE)
    failed = [c for c in cells if c.failed]
    if not cells:
        LOGGER.warning("The requested range contains no cells")
    if kwargs["output_format"] == "json":
        payload: Dict[str, Any] = {
            "cells": [asdict(c) for c in cells],
            "total": len(cells),
            "failed": len(failed),
        }
        click.echo(json.dumps(payload, indent=2))
    else:
        click.echo(f"{len(cells)} cells, {len(failed)} failed")
    if failed:
        sys.exit(EXIT_VERIFICATION)

from typing import Mapping, Optional, Tuple

import click

from .types import KINDS, CYCLE, DomainError, FieldSpec, PathFamilySpec


def _int_list(value: str, param_name: str) -> Tuple[int, ...]:
    try:
        items = tuple(int(item) for item in value.split(",") if item.strip())
    except ValueError:
        raise click.BadParameter(f"{value!r} is not a comma-separated list of integers", param_hint=param_name)
    if not items:
        raise click.BadParameter("the list is empty", param_hint=param_name)
    return items


def validate_int_list(ctx, param, value: Optional[str]) -> Optional[Tuple[int, ...]]:
    if value is None:
        return None
    return _int_list(value, f"--{param.name.replace('_', '-')}")


def validate_range(ctx, param, value: str) -> Tuple[int, int]:
    lo, sep, hi = value.partition("..")
    try:
        bounds = (int(lo), int(hi if sep else lo))
    except ValueError:
        raise click.BadParameter(f"{value!r} is not of the form a..b")
    return bounds


def validate_characteristics(ctx, param, value: str) -> Tuple[FieldSpec, ...]:
    try:
        return tuple(FieldSpec(c) for c in _int_list(value, "--char-list"))
    except DomainError as e:
        raise click.BadParameter(str(e))


def validate_characteristic(ctx, param, value: int) -> FieldSpec:
    try:
        return FieldSpec(value)
    except DomainError as e:
        raise click.BadParameter(str(e))


def add_family_options(command: click.Command, *, n_required: bool = True):
    command.params.append(click.Option(["--kind"], type=click.Choice(KINDS), default=CYCLE, show_default=True))
    command.params.append(click.Option(["--n"], type=int, required=n_required, help="Number of vertices."))
    command.params.append(click.Option(["--t"], type=int, required=True, help="Vertices per path."))


def add_field_option(command: click.Command):
    command.params.append(click.Option(
        ["--char", "field"], default=0, show_default=True, metavar="0|PRIME",
        callback=validate_characteristic, help="Field characteristic; 0 is the rationals.",
    ))


def family_from_kwargs(kwargs: Mapping) -> PathFamilySpec:
    try:
        return PathFamilySpec(kwargs["kind"], kwargs["n"], kwargs["t"])
    except DomainError as e:
        raise click.UsageError(str(e))

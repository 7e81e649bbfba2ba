import logging
from typing import Callable, Mapping

import click

from . import __version__
from .betti import betti_handler, add_global_betti_options
from .homology import homology_handler, add_global_homology_options
from .verify import verify_handler, add_global_verify_options

LOG_LEVELS = [logging.WARNING, logging.INFO, logging.DEBUG]


@click.group(name="path-betti")
@click.version_option(version=__version__, message="%(version)s")
@click.option("-v", "--verbose", count=True, help="Repeat for more log output.")
def cli(verbose):
    logging.basicConfig(
        level=LOG_LEVELS[min(verbose, len(LOG_LEVELS) - 1)],
        format="%(levelname)s %(name)s: %(message)s",
    )


def _get_command(name: str, handler: Callable[[Mapping], None], help: str) -> click.Command:
    def command(**kwargs):
        handler(kwargs)

    return click.Command(name, callback=command, help=help)


for name, handler, add_options, help in [
    ("betti", betti_handler, add_global_betti_options,
     "Compute the graded Betti table of a path ideal."),
    ("homology", homology_handler, add_global_homology_options,
     "Reduced homology of run-sequence or full-cycle complements."),
    ("verify", verify_handler, add_global_verify_options,
     "Run the oracle/closed-form invariant matrix."),
]:
    command = _get_command(name, handler, help)
    add_options(command)
    cli.add_command(command, name=name)

"""Adapted from https://github.com/Lightning-Universe/lightning-flash/blob/master/src/flash/__main__.py"""

import functools
import importlib
import sys
from typing import Optional
from unittest.mock import patch

import click

from layersim.utils.exceptions import LayersimError, UsageError
from layersim.utils.registry import tasks

CONTEXT_SETTINGS = dict(help_option_names=["-h", "--help"])


@click.group(no_args_is_help=True, add_help_option=True, context_settings=CONTEXT_SETTINGS)
def run():
    """layersim command line utility: interlayer similarity, robustness and reduction of multiplex networks.

    Every command takes its own flags, see `layersim <command> --help`.
    """


def register_command(command, task, name: Optional[str] = None):
    @run.command(
        name if name is not None else command.__name__,
        context_settings=dict(
            help_option_names=[],
            ignore_unknown_options=True,
        ),
    )
    @click.argument("cli_args", nargs=-1, type=click.UNPROCESSED)
    @functools.wraps(command)
    def wrapper(cli_args):
        with patch("sys.argv", [task.__file__] + list(cli_args)):
            try:
                command()
            except LayersimError as e:
                click.echo(f"error: {e}", err=True)
                sys.exit(e.exit_code)


for module, commands in tasks.items():
    for command_name in commands:
        task = importlib.import_module(f"{module}.{command_name}")
        for command in task.__all__:
            register_command(task.__dict__[command], task, name=command_name)


def main():
    """Console entry point: usage errors of the command group exit with the usage status."""
    try:
        status = run.main(standalone_mode=False)
    except click.exceptions.UsageError as e:
        e.show()
        sys.exit(UsageError.exit_code)
    except click.exceptions.Abort:
        click.echo("Aborted!", err=True)
        sys.exit(UsageError.exit_code)
    sys.exit(status if isinstance(status, int) else 0)

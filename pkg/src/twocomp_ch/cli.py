import logging
from pathlib import Path

import click
from rich.console import Console
from rich.traceback import install

from .checks import run_check
from .config import BaseConfig
from .exceptions import ConfigurationError, TwoCompError
from .json import load_document
from .logging import init_logging, log_exception
from .simulation import EXIT_CONFIGURATION_ERROR, EXIT_ENGINE_FAILURE, parse_config, run_simulate
from .sweep import run_sweep

install(show_locals=False)


def _read_config(path):
    try:
        return Path(path).read_text(encoding='utf-8')
    except OSError as e:
        raise ConfigurationError(f'cannot read config {path}: {e}') from e


@click.group()
@click.pass_context
def main(ctx):
    """ Two-component higher-order Camassa-Holm engine. """
    init_logging(ctx.obj or BaseConfig)


@main.command()
@click.option('--config', 'config_path', required=True, help='Simulation config (JSON).')
@click.option('--out', 'out_dir', default=None, help='Output directory; overrides output.directory.')
@click.pass_context
def simulate(ctx, config_path, out_dir):
    """ Runs one simulation and writes trajectory.csv, field snapshots and summary.json. """
    try:
        config = parse_config(_read_config(config_path))
    except ConfigurationError as e:
        logging.error(f'Invalid configuration:\n{e}')
        ctx.exit(EXIT_CONFIGURATION_ERROR)

    try:
        status = run_simulate(config, out_dir)
    except TwoCompError as e:
        log_exception(e)
        ctx.exit(EXIT_ENGINE_FAILURE)

    ctx.exit(status)


@main.command()
@click.pass_context
def check(ctx):
    """ Runs the operator identity and property suite. """
    report = run_check(console=Console())
    ctx.exit(report.exit_status)


@main.command()
@click.option('--config', 'config_path', required=True, help='Simulation config (JSON) with a sweep section.')
@click.option('--jobs', type=int, default=None, help='Worker processes; defaults to SWEEP_JOBS.')
@click.pass_context
def sweep(ctx, config_path, jobs):
    """ Runs every cell of the parameter grid and writes sweep.jsonl. """
    try:
        path = run_sweep(load_document(_read_config(config_path)), jobs=jobs)
    except ConfigurationError as e:
        logging.error(f'Invalid configuration:\n{e}')
        ctx.exit(EXIT_CONFIGURATION_ERROR)

    click.echo(str(path))

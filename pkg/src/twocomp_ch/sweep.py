import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .config import BaseConfig
from .exceptions import ConfigurationError
from .export import JsonLinesWriter
from .logging import log_exception
from .simulation import build_config, merge, resolve_document, simulate
from .validators import is_invalid_count

SWEEP_AXES = ['s', 'a', 'kappa', 'alpha']
SWEEP_FILENAME = 'sweep.jsonl'


def sweep_cells(document):
    """ Cartesian product of the sweep axes, in axis order s, a, kappa, alpha. """
    grids = document.get('sweep', {})
    axes = [a for a in SWEEP_AXES if a in grids]

    if not axes or any(len(grids[a]) == 0 for a in axes):
        raise ConfigurationError('sweep: the parameter grid is empty')

    return [dict(zip(axes, values)) for values in itertools.product(*(grids[a] for a in axes))]


def run_cell(document, params):
    """ Runs one sweep cell; failures become the cell's line instead of propagating. """
    line = {'params': params}

    try:
        cell_document = merge({k: v for k, v in document.items() if k != 'sweep'}, {'model': params})
        result = simulate(build_config(cell_document))

        termination = result.trajectory.termination
        line.update({
            'status': termination.status,
            'reason': termination.reason,
            't_star': termination.t,
            'max_metric_drift': result.report.maxima.get('metric_drift'),
            'max_sup_ux': result.report.maxima.get('sup_ux'),
        })

    except Exception as e:
        logging.error(f'Sweep cell {params} failed')
        log_exception(e)

        line.update({
            'status': 'error',
            'reason': f'{type(e).__name__}: {e}',
            't_star': None,
            'max_metric_drift': None,
            'max_sup_ux': None,
        })

    return line


def run_sweep(document, jobs=None, out_dir=None):
    jobs = BaseConfig.SWEEP_JOBS if jobs is None else jobs
    if is_invalid_count(jobs):
        raise ConfigurationError(f'jobs: positive integer required (got {jobs!r})')

    resolved = resolve_document(document)
    cells = sweep_cells(resolved)

    directory = Path(out_dir or resolved['output']['directory'])
    directory.mkdir(parents=True, exist_ok=True)
    writer = JsonLinesWriter(directory / SWEEP_FILENAME)

    logging.info(f'Sweeping {len(cells)} cells with {jobs} job(s)')

    if jobs == 1:
        for params in cells:
            writer.write(run_cell(resolved, params))
    else:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            for line in executor.map(run_cell, itertools.repeat(resolved), cells):
                writer.write(line)

    logging.info(f'Sweep written to {writer.path}')

    return writer.path

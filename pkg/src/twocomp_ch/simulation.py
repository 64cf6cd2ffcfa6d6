import copy
import logging
import math
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .config import BaseConfig
from .diagnostics import TRAJECTORY_COLUMNS, DiagnosticTolerances, compute_report
from .dynamics import ModelParams, State, field_rhs_for
from .exceptions import ConfigurationError
from .export import SNAPSHOT_COLUMNS, snapshot_rows, write_csv, write_json
from .formatters import format_termination
from .initial_conditions import InitialConditionSpec, build_initial_condition
from .integration import BlowupThresholds, OrderProblem, StepperConfig, advance, order_probe, state_distance
from .json import load_document, validate_document
from .spectral import PeriodicGrid

EXIT_COMPLETED = 0
EXIT_CONFIGURATION_ERROR = 1
EXIT_BLOWUP = 2
# Engine failures share the non-zero, non-blow-up code with configuration errors
EXIT_ENGINE_FAILURE = 1

# Five times the initial slope 2*pi of cos(2*pi*x), about half of what n=256 resolves
BREAKING_SLOPE_LIMIT = 10.0 * math.pi

PRESETS = {
    'ch_breaking': {
        'model': {'a': 2, 's': 1, 'kappa': 0, 'alpha': 0},
        'initial': {'kind': 'single_mode', 'target': 'u', 'amplitude': 1, 'wavenumber': 1},
        'stepper': {'t_end': 20},
        'thresholds': {'slope_limit': BREAKING_SLOPE_LIMIT},
    },
    'global_s2': {
        'model': {'a': 2, 's': 2, 'kappa': 0, 'alpha': 0},
        'initial': {'kind': 'single_mode', 'target': 'u', 'amplitude': 1, 'wavenumber': 1},
        'stepper': {'t_end': 10},
        'thresholds': {'slope_limit': BREAKING_SLOPE_LIMIT},
    },
    'twocomp_smooth': {
        'model': {'a': 2, 's': 2, 'kappa': 1, 'alpha': 0},
        'initial': {
            'kind': 'fourier_list',
            'u_coefficients': [[1, 0.25, 0]],
            'rho_coefficients': [[0, 2, 0], [1, 0, -0.25]],
        },
        'flow_map': True,
        'stepper': {'t_end': 0.5},
    },
    'dp_breaking': {
        'model': {'a': 3, 's': 1, 'kappa': 0, 'alpha': 0},
        'initial': {'kind': 'single_mode', 'target': 'u', 'amplitude': 1, 'wavenumber': 1},
        'stepper': {'t_end': 20},
        'thresholds': {'slope_limit': BREAKING_SLOPE_LIMIT},
    },
}


def defaults():
    return {
        'grid': {'n': 256},
        'model': {'a': 2, 's': 2, 'kappa': 0, 'alpha': 0, 'formulation': 'direct'},
        'stepper': {'dt': 1e-3, 't_end': 1.0, 'sample_every': 10},
        'thresholds': {'slope_limit': 1e3, 'tail_fraction_limit': 0.1},
        'initial': {},
        'flow_map': False,
        'output': {'directory': BaseConfig.OUTPUT_DIRECTORY, 'snapshot_every': 0},
        'tolerances': {'metric_drift': 1e-6, 'mean_drift': 1e-8, 'lagrangian': 1e-6, 'stretch_slack': 1e-3, 'apriori': 1e-10},
    }


def merge(base, override):
    """ Nested merge; values from override win, objects merge key by key. """
    result = copy.deepcopy(base)

    for key, value in override.items():
        if isinstance(value, dict) and isinstance(result.get(key), dict):
            result[key] = merge(result[key], value)
        else:
            result[key] = copy.deepcopy(value)

    return result


@dataclass(frozen=True)
class OutputConfig:
    directory: str
    snapshot_every: int = 0


@dataclass(frozen=True)
class SimulationConfig:
    grid: PeriodicGrid
    model: ModelParams
    formulation: str
    stepper: StepperConfig
    thresholds: BlowupThresholds
    initial: InitialConditionSpec
    flow_map: bool
    output: OutputConfig
    tolerances: DiagnosticTolerances
    document: dict

    def initial_state(self):
        U = build_initial_condition(self.initial, self.grid, self.model.alpha)
        st = State(U, 0.0)
        return st.with_flow() if self.flow_map else st


def resolve_document(document):
    validate_document(document)

    preset_name = document.get('preset')
    resolved = defaults()
    if preset_name is not None:
        if preset_name not in PRESETS:
            raise ConfigurationError(f'preset: unknown preset {preset_name!r}; known presets are {", ".join(PRESETS)}')
        resolved = merge(resolved, PRESETS[preset_name])

    return merge(resolved, document)


def build_config(document):
    resolved = resolve_document(document)

    model = resolved['model']
    config = SimulationConfig(
        grid=PeriodicGrid(resolved['grid']['n']),
        model=ModelParams(a=model['a'], kappa=model['kappa'], alpha=model['alpha'], s=model['s']),
        formulation=model['formulation'],
        stepper=StepperConfig(**resolved['stepper']),
        thresholds=BlowupThresholds(**resolved['thresholds']),
        initial=InitialConditionSpec.from_dict(resolved['initial']),
        flow_map=resolved['flow_map'],
        output=OutputConfig(**resolved['output']),
        tolerances=DiagnosticTolerances(**resolved['tolerances']),
        document=resolved,
    )

    if config.formulation == 'geodesic' and config.model.a != 2:
        raise ConfigurationError(f'model.formulation: the geodesic formulation needs a = 2 (got a={config.model.a!r})')

    # Surface initial-condition errors (band limits, coefficient shapes) at parse time
    config.initial_state()

    return config


def parse_config(text):
    return build_config(load_document(text))


def preset_order_problem(preset, t_end, overrides=None):
    """ The refinement problem for a named preset: its initial state, model and formulation up to t_end. """
    config = build_config(merge({'preset': preset}, overrides or {}))

    return OrderProblem(
        config.initial_state(),
        field_rhs_for(config.formulation),
        config.model,
        t_end,
        distance=state_distance,
    )


def preset_order(preset, dt_list, t_end=0.5, overrides=None):
    result = order_probe(preset_order_problem(preset, t_end, overrides), dt_list)
    logging.info(f'Temporal order for {preset}: {result.order if result.conclusive else result.message}')
    return result


@dataclass
class SimulationResult:
    config: SimulationConfig
    trajectory: object
    report: object

    @property
    def exit_status(self):
        return EXIT_BLOWUP if self.trajectory.termination.is_blowup else EXIT_COMPLETED

    def summary(self):
        termination = self.trajectory.termination
        return {
            'termination': {'status': termination.status, 'reason': termination.reason, 't': termination.t},
            'maxima': self.report.maxima,
            'checks': self.report.checks,
            'config': self.config.document,
            'engine': {'name': 'twocomp_ch', 'version': __version__},
        }


def simulate(config):
    logging.info(f'Simulating n={config.grid.n}, {config.model}, formulation={config.formulation}')

    trajectory = advance(
        config.initial_state(),
        config.model,
        config.stepper,
        config.thresholds,
        rhs=field_rhs_for(config.formulation),
    )
    logging.info(f'Termination: {format_termination(trajectory.termination)}')
    report = compute_report(trajectory, config.model, config.tolerances)

    return SimulationResult(config, trajectory, report)


def write_outputs(result, directory):
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)

    write_csv(directory / 'trajectory.csv', TRAJECTORY_COLUMNS, result.report.rows)

    snapshot_every = result.config.output.snapshot_every
    if snapshot_every:
        for step, st in zip(result.trajectory.steps, result.trajectory.states):
            if step % snapshot_every == 0:
                write_csv(directory / f'fields_{step}.csv', SNAPSHOT_COLUMNS, snapshot_rows(st, result.config.model))

    write_json(directory / 'summary.json', result.summary())
    logging.info(f'Outputs written to {directory}')


def run_simulate(config, out_dir=None):
    result = simulate(config)
    write_outputs(result, out_dir or config.output.directory)
    return result.exit_status

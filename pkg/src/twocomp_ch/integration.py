import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .dynamics import coupled_rhs
from .exceptions import ConfigurationError, NonFiniteStateError
from .spectral import derivative, min_value, tail_fraction
from .validators import is_invalid_count, is_invalid_fraction, is_invalid_positive, is_invalid_real

STATUS_COMPLETED = 'completed'
STATUS_BLOWUP = 'blowup'

REASON_NON_FINITE = 'non_finite'
REASON_SLOPE = 'slope'
REASON_SPECTRAL_TAIL = 'spectral_tail'


@dataclass(frozen=True)
class StepperConfig:
    dt: float = 1e-3
    t_end: float = 1.0
    sample_every: int = 10

    def __post_init__(self):
        if is_invalid_positive(self.dt):
            raise ConfigurationError(f'stepper.dt: dt > 0 required (got {self.dt!r})')
        if is_invalid_positive(self.t_end):
            raise ConfigurationError(f'stepper.t_end: t_end > 0 required (got {self.t_end!r})')
        if self.t_end < self.dt:
            raise ConfigurationError(f'stepper.t_end: t_end ≥ dt required (got t_end={self.t_end!r}, dt={self.dt!r})')
        if is_invalid_count(self.sample_every):
            raise ConfigurationError(f'stepper.sample_every: positive integer required (got {self.sample_every!r})')

    @property
    def steps(self):
        return max(1, int(round(self.t_end / self.dt)))


@dataclass(frozen=True)
class BlowupThresholds:
    slope_limit: float = 1e3
    tail_fraction_limit: float = 0.1

    def __post_init__(self):
        if is_invalid_positive(self.slope_limit):
            raise ConfigurationError(f'thresholds.slope_limit: slope_limit > 0 required (got {self.slope_limit!r})')
        if is_invalid_fraction(self.tail_fraction_limit):
            raise ConfigurationError(
                f'thresholds.tail_fraction_limit: 0 < tail_fraction_limit < 1 required (got {self.tail_fraction_limit!r})'
            )


@dataclass(frozen=True)
class BlowupStatus:
    triggered: bool
    reason: str = None
    value: float = None


@dataclass(frozen=True)
class Termination:
    status: str
    t: float
    reason: str = None

    @property
    def is_blowup(self):
        return self.status == STATUS_BLOWUP


@dataclass
class Trajectory:
    times: list = field(default_factory=list)
    steps: list = field(default_factory=list)
    states: list = field(default_factory=list)
    termination: Termination = None

    def record(self, step, st):
        self.times.append(st.t)
        self.steps.append(step)
        self.states.append(st)

    @property
    def initial(self):
        return self.states[0]

    @property
    def final(self):
        return self.states[-1]

    @property
    def has_flow(self):
        return bool(self.states) and self.states[0].flow is not None

    def __len__(self):
        return len(self.states)


def _advanced(y, k, h):
    if hasattr(y, 'advanced'):
        return y.advanced(k, h)

    return y + k * h


def _is_finite(y):
    if hasattr(y, 'is_finite'):
        return y.is_finite()

    return bool(np.all(np.isfinite(y)))


def rk4_step(rhs, st, dt, p):
    """ One classical Runge-Kutta step; any non-zero dt is accepted so steps can be reversed. """
    if is_invalid_real(dt) or dt == 0:
        raise ConfigurationError(f'dt must be a non-zero finite real (got {dt!r})')

    try:
        with np.errstate(over='raise', invalid='raise'):
            k1 = rhs(st, p)
            k2 = rhs(_advanced(st, k1, dt / 2.0), p)
            k3 = rhs(_advanced(st, k2, dt / 2.0), p)
            k4 = rhs(_advanced(st, k3, dt), p)
            result = _advanced(st, (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (1.0 / 6.0), dt)
    except (NonFiniteStateError, FloatingPointError) as e:
        raise NonFiniteStateError(f'non-finite Runge-Kutta stage: {e}') from e

    if not _is_finite(result):
        raise NonFiniteStateError('non-finite Runge-Kutta result')

    return result


def detect_blowup(st, thresholds):
    if not st.is_finite():
        return BlowupStatus(True, REASON_NON_FINITE)

    min_slope = min_value(derivative(st.U.u))
    if min_slope < -thresholds.slope_limit:
        return BlowupStatus(True, REASON_SLOPE, min_slope)

    tail = max(tail_fraction(st.U.u), tail_fraction(st.U.rho))
    if tail > thresholds.tail_fraction_limit:
        return BlowupStatus(True, REASON_SPECTRAL_TAIL, tail)

    return BlowupStatus(False)


def advance(st0, p, cfg, thresholds, rhs=coupled_rhs):
    logging.info(f'Advancing to t={cfg.t_end} with dt={cfg.dt} ({cfg.steps} steps)')

    trajectory = Trajectory()
    st = st0

    status = detect_blowup(st, thresholds)
    if status.reason != REASON_NON_FINITE:
        trajectory.record(0, st)

    for step in range(1, cfg.steps + 1):
        if status.triggered:
            break

        try:
            st = rk4_step(rhs, st, cfg.dt, p)
        except NonFiniteStateError as e:
            logging.warning(f'Non-finite state after t={st.t}: {e}')
            status = BlowupStatus(True, REASON_NON_FINITE)
            break

        status = detect_blowup(st, thresholds)

        if status.triggered or step % cfg.sample_every == 0 or step == cfg.steps:
            trajectory.record(step, st)

    if status.triggered:
        trajectory.termination = Termination(STATUS_BLOWUP, st.t, status.reason)
        logging.warning(f'Blow-up ({status.reason}) detected at t={st.t}')
    else:
        trajectory.termination = Termination(STATUS_COMPLETED, st.t)
        logging.info(f'Run completed at t={st.t}')

    return trajectory


@dataclass(frozen=True)
class OrderProblem:
    initial: object
    rhs: object
    params: object
    t_end: float
    distance: object = None

    def solve(self, dt):
        steps = max(1, int(round(self.t_end / dt)))
        y = self.initial
        for _ in range(steps):
            y = rk4_step(self.rhs, y, dt, self.params)
        return y

    def measure(self, a, b):
        if self.distance is not None:
            return self.distance(a, b)

        return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))


@dataclass(frozen=True)
class OrderEstimate:
    dts: list
    errors: list
    orders: list
    conclusive: bool
    order: float = None
    message: str = ''


def state_distance(a, b):
    return float(np.max(np.abs(a.U.u.samples - b.U.u.samples)) + np.max(np.abs(a.U.rho.samples - b.U.rho.samples)))


def order_probe(problem, dt_list):
    """ Empirical order from successive step-size refinements, measured against the finest step. """
    if len(dt_list) < 3:
        raise ConfigurationError(f'order_probe needs at least 3 step sizes (got {len(dt_list)})')

    dts = sorted((float(dt) for dt in dt_list), reverse=True)
    reference = problem.solve(dts[-1])
    errors = [problem.measure(problem.solve(dt), reference) for dt in dts[:-1]]

    monotone = all(e > 0 for e in errors) and all(a > b for a, b in zip(errors, errors[1:]))
    if not monotone:
        return OrderEstimate(dts, errors, [], False, message='errors do not decrease monotonically')

    orders = [
        math.log(e_coarse / e_fine) / math.log(dt_coarse / dt_fine)
        for e_coarse, e_fine, dt_coarse, dt_fine in zip(errors, errors[1:], dts, dts[1:])
    ]
    if not orders:
        return OrderEstimate(dts, errors, [], False, message='need two errors for an order estimate')

    return OrderEstimate(dts, errors, orders, True, float(np.median(orders)))

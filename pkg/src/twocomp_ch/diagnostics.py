"""Monitors for the conservation laws, invariants and a-priori bounds along a trajectory.

Every monitor is a pure function of the sampled trajectory, so recomputing
a report gives identical numbers.
"""
from dataclasses import dataclass, field

import numpy as np

from .exceptions import ConfigurationError, FlowDegeneracyError
from .lie_algebra import metric_norm_sq
from .spectral import (
    apply_power,
    circle_integral,
    derivative,
    interpolate,
    min_value,
    oversample,
    sobolev_norm_sq,
    sup_norm,
    tail_fraction,
)

DRIFT_FLOOR = 1e-14

TRAJECTORY_COLUMNS = [
    't',
    'metric_norm_sq',
    'metric_drift',
    'mean_u',
    'min_rho',
    'sup_ux',
    'min_ux',
    'lagrangian_dev',
    'stretch_ratio',
    'ladder_k0',
    'ladder_k1',
    'tail_fraction',
]


@dataclass(frozen=True)
class DiagnosticTolerances:
    metric_drift: float = 1e-6
    mean_drift: float = 1e-8
    lagrangian: float = 1e-6
    stretch_slack: float = 1e-3
    apriori: float = 1e-10


@dataclass(frozen=True)
class AprioriResult:
    holds: bool
    slack: float


@dataclass
class DiagnosticReport:
    rows: list = field(default_factory=list)
    maxima: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)

    @property
    def passed(self):
        return all(self.checks.values())


def _require_flow(traj):
    if not traj.has_flow:
        raise ConfigurationError('this monitor needs a run with the flow map enabled')


def _scale(*values):
    return 1.0 + max(abs(v) for v in values)


def metric_norm_series(traj, p):
    return np.array([metric_norm_sq(st.U, p.metric) for st in traj.states])


def metric_norm_drift(traj, p):
    norms = metric_norm_series(traj, p)
    return np.abs(norms - norms[0]) / max(norms[0], DRIFT_FLOOR)


def mean_velocity_drift(traj, p):
    means = np.array([circle_integral(st.U.u) for st in traj.states])
    return np.abs(means - means[0])


def _lagrangian_quantity(st, p):
    rho_at_markers = interpolate(st.U.rho, st.flow.positions())
    with np.errstate(invalid='ignore', divide='ignore'):
        return rho_at_markers * np.power(st.flow.jacobian().samples, p.a - 1.0)


def lagrangian_invariant(traj, p):
    """ max_j of the change in (rho o phi) * phi_x^(a-1) since the first sample. """
    _require_flow(traj)

    initial = _lagrangian_quantity(traj.initial, p)
    return np.array([float(np.max(np.abs(_lagrangian_quantity(st, p) - initial))) for st in traj.states])


def rho_positivity(traj):
    return np.array([min_value(st.U.rho) for st in traj.states])


def rho_positivity_asserted(traj):
    return bool(traj.states) and min_value(traj.initial.U.rho) > 0


def sup_slope_series(traj):
    return np.array([sup_norm(derivative(st.U.u)) for st in traj.states])


def _gamma(st):
    jacobian = oversample(st.flow.jacobian())
    if np.min(jacobian) <= 0:
        raise FlowDegeneracyError(f'phi_x ≤ 0 at t={st.t}: the flow map is no longer a diffeomorphism')

    return float(np.max(1.0 / jacobian))


def stretch_bound(traj):
    """ gamma(t) / (gamma(0) exp(K(t) t)), with K(t) the running max of sup|u_x| over the samples. """
    _require_flow(traj)

    gamma0 = _gamma(traj.initial)
    t0 = traj.initial.t
    running_K = np.maximum.accumulate(sup_slope_series(traj))

    return np.array([
        _gamma(st) / (gamma0 * np.exp(K * (st.t - t0)))
        for st, K in zip(traj.states, running_K)
    ])


def rho_sup_bound(traj, p):
    """ sup|rho(t)| against sup|rho_0| * max_j phi_x(xi_j)^(1-a); ratios at or below one. """
    _require_flow(traj)

    rho0_sup = sup_norm(traj.initial.U.rho)
    result = []
    for st in traj.states:
        bound = rho0_sup * float(np.max(np.power(st.flow.jacobian().samples, 1.0 - p.a)))
        rho_sup = sup_norm(st.U.rho)
        result.append(rho_sup / bound if bound > 0 else 0.0)

    return np.array(result)


def sobolev_ladder(U, p, k):
    if k < 0 or int(k) != k:
        raise ConfigurationError(f'ladder order must be a non-negative integer (got {k!r})')

    m = apply_power(U.u, p.s)
    return sobolev_norm_sq(m, k) + sobolev_norm_sq(U.rho, k + 1)


def apriori_check(U, p, tolerance=1e-10):
    """ 3/4 |u|_{H^s}^2 + kappa |rho|_{L2}^2 <= |U|_A^2 + alpha^2/2, with relative slack. """
    metric = p.metric
    lhs = 0.75 * sobolev_norm_sq(U.u, metric.s) + metric.kappa * sobolev_norm_sq(U.rho, 0.0)
    rhs = metric_norm_sq(U, metric) + U.alpha ** 2 / 2.0

    slack = rhs - lhs
    return AprioriResult(slack >= -tolerance * _scale(lhs, rhs), slack)


def embedding_ratio(U, p):
    """ sup|u_x| / |m|_{L2}; at most one once s > 3/2. """
    m_norm = np.sqrt(sobolev_norm_sq(apply_power(U.u, p.s), 0.0))
    if m_norm == 0:
        return 0.0

    return sup_norm(derivative(U.u)) / m_norm


def compute_report(traj, p, tolerances=None):
    tolerances = tolerances or DiagnosticTolerances()
    report = DiagnosticReport()
    if not traj.states:
        return report

    states = traj.states
    norms = metric_norm_series(traj, p)
    metric_drift = metric_norm_drift(traj, p)
    mean_drift = mean_velocity_drift(traj, p)
    min_rho = rho_positivity(traj)
    sup_ux = sup_slope_series(traj)
    min_ux = np.array([min_value(derivative(st.U.u)) for st in states])
    ladder_k0 = np.array([sobolev_ladder(st.U, p, 0) for st in states])
    ladder_k1 = np.array([sobolev_ladder(st.U, p, 1) for st in states])
    tails = np.array([max(tail_fraction(st.U.u), tail_fraction(st.U.rho)) for st in states])
    apriori = [apriori_check(st.U, p, tolerances.apriori) for st in states]
    embedding = np.array([embedding_ratio(st.U, p) for st in states])

    lagrangian = stretch = rho_sup = None
    if traj.has_flow:
        lagrangian = lagrangian_invariant(traj, p)
        try:
            stretch = stretch_bound(traj)
        except FlowDegeneracyError:
            report.checks['flow_diffeomorphism'] = False
        rho_sup = rho_sup_bound(traj, p)

    for i, st in enumerate(states):
        report.rows.append({
            't': st.t,
            'metric_norm_sq': norms[i],
            'metric_drift': metric_drift[i],
            'mean_u': circle_integral(st.U.u),
            'min_rho': min_rho[i],
            'sup_ux': sup_ux[i],
            'min_ux': min_ux[i],
            'lagrangian_dev': None if lagrangian is None else lagrangian[i],
            'stretch_ratio': None if stretch is None else stretch[i],
            'ladder_k0': ladder_k0[i],
            'ladder_k1': ladder_k1[i],
            'tail_fraction': tails[i],
        })

    report.maxima = {
        'metric_drift': float(np.max(metric_drift)),
        'mean_velocity_drift': float(np.max(mean_drift)),
        'sup_ux': float(np.max(sup_ux)),
        'min_ux': float(np.min(min_ux)),
        'min_rho': float(np.min(min_rho)),
        'ladder_k0': float(np.max(ladder_k0)),
        'ladder_k1': float(np.max(ladder_k1)),
        'tail_fraction': float(np.max(tails)),
        'apriori_min_slack': float(min(r.slack for r in apriori)),
        'embedding_ratio': float(np.max(embedding)),
    }
    if lagrangian is not None:
        report.maxima['lagrangian_dev'] = float(np.max(lagrangian))
        report.maxima['rho_sup_ratio'] = float(np.max(rho_sup))
    if stretch is not None:
        report.maxima['stretch_ratio'] = float(np.max(stretch))

    if p.a == 2:
        report.checks['metric_norm_conserved'] = report.maxima['metric_drift'] <= tolerances.metric_drift
        report.checks['mean_velocity_conserved'] = report.maxima['mean_velocity_drift'] <= tolerances.mean_drift
    if rho_positivity_asserted(traj):
        report.checks['rho_positive'] = report.maxima['min_rho'] > 0
    if lagrangian is not None:
        rho0_sup = sup_norm(traj.initial.U.rho)
        report.checks['lagrangian_invariant'] = report.maxima['lagrangian_dev'] <= tolerances.lagrangian * (1.0 + rho0_sup)
        report.checks['rho_sup_bound'] = report.maxima['rho_sup_ratio'] <= 1.0 + tolerances.stretch_slack
    if stretch is not None:
        report.checks['stretch_bound'] = report.maxima['stretch_ratio'] <= 1.0 + tolerances.stretch_slack
    report.checks['apriori'] = all(r.holds for r in apriori)
    if p.s > 1.5:
        report.checks['embedding'] = report.maxima['embedding_ratio'] <= 1.0

    return report

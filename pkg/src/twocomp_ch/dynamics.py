import logging
from dataclasses import dataclass, replace

import numpy as np

from .exceptions import ConfigurationError, NonFiniteStateError
from .lie_algebra import AlgebraElement, MetricParams, bilinear_B
from .spectral import (
    SpectralField,
    apply_power,
    dealiased_product,
    derivative,
    interpolate,
    oversample,
)
from .validators import is_invalid_coupling, is_invalid_exponent, is_invalid_real

FORMULATION_DIRECT = 'direct'
FORMULATION_GEODESIC = 'geodesic'


@dataclass(frozen=True)
class ModelParams:
    a: float = 2.0
    kappa: float = 0.0
    alpha: float = 0.0
    s: float = 2.0

    def __post_init__(self):
        if is_invalid_real(self.a):
            raise ConfigurationError(f'model.a: a must be a finite real (got {self.a!r})')
        if is_invalid_coupling(self.kappa):
            raise ConfigurationError(f'model.kappa: kappa ≥ 0 required (got {self.kappa!r})')
        if is_invalid_real(self.alpha):
            raise ConfigurationError(f'model.alpha: alpha must be a finite real (got {self.alpha!r})')
        if is_invalid_exponent(self.s):
            raise ConfigurationError(f'model.s: s ≥ 1 required (got {self.s!r})')

        if self.a == 1:
            logging.warning('a = 1 lies outside the studied family: the rho equation reduces to pure transport')

    @property
    def metric(self):
        return MetricParams(kappa=self.kappa, s=self.s)


@dataclass(frozen=True, eq=False)
class FlowMap:
    """ Lagrangian markers phi(xi) = xi + d(xi) at the labels xi_j = j/n. """
    displacement: SpectralField

    __array_ufunc__ = None

    @classmethod
    def identity(cls, grid):
        return cls(SpectralField.zeros(grid))

    @property
    def grid(self):
        return self.displacement.grid

    @property
    def labels(self):
        return self.grid.points

    def positions(self):
        return self.labels + self.displacement.samples

    def jacobian(self):
        return derivative(self.displacement) + 1.0

    def is_orientation_preserving(self):
        return bool(np.min(oversample(self.jacobian())) > 0)

    def is_finite(self):
        return self.displacement.is_finite()


@dataclass(frozen=True, eq=False)
class Tendency:
    """ Time derivative of a State: field tendencies plus the optional displacement tendency. """
    dU: AlgebraElement
    dflow: SpectralField = None

    __array_ufunc__ = None

    def __add__(self, other):
        dflow = None if self.dflow is None else self.dflow + other.dflow
        return Tendency(self.dU + other.dU, dflow)

    def __mul__(self, scalar):
        dflow = None if self.dflow is None else self.dflow * scalar
        return Tendency(self.dU * scalar, dflow)

    __rmul__ = __mul__


@dataclass(frozen=True, eq=False)
class State:
    U: AlgebraElement
    t: float = 0.0
    flow: FlowMap = None

    def is_finite(self):
        return self.U.is_finite() and (self.flow is None or self.flow.is_finite())

    def with_flow(self):
        return replace(self, flow=FlowMap.identity(self.U.grid))

    def advanced(self, k, h):
        """ The state y + h*k; alpha is carried over untouched. """
        U = AlgebraElement(self.U.u + k.dU.u * h, self.U.rho + k.dU.rho * h, self.U.alpha)
        flow = None
        if self.flow is not None:
            flow = FlowMap(self.flow.displacement + k.dflow * h)

        return State(U, self.t + h, flow)


def _require_finite(U):
    if not U.is_finite():
        raise NonFiniteStateError('non-finite field values in right-hand side input')


def rhs_direct(st, p):
    """ Momentum form: m = Au, m_t = alpha u_x - a u_x m - u m_x - kappa rho rho_x. """
    U = st.U
    _require_finite(U)

    u, rho = U.u, U.rho
    u_x = derivative(u)
    rho_x = derivative(rho)
    m = apply_power(u, p.s)

    m_t = (
        u_x * p.alpha
        - dealiased_product(u_x, m) * p.a
        - dealiased_product(u, derivative(m))
        - dealiased_product(rho, rho_x) * p.kappa
    )
    rho_t = -dealiased_product(u, rho_x) - dealiased_product(u_x, rho) * (p.a - 1.0)

    return AlgebraElement(apply_power(m_t, -p.s), rho_t, 0.0)


def rhs_geodesic(st, p):
    """ Arnold-Euler form U_t = -B(U, U); defined for a = 2 only. """
    if p.a != 2:
        raise ConfigurationError(f'the geodesic formulation needs a = 2 (got a={p.a!r})')

    U = AlgebraElement(st.U.u, st.U.rho, p.alpha)
    _require_finite(U)

    if p.kappa > 0:
        B = bilinear_B(U, U, p.metric)
        return AlgebraElement(-B.u, -B.rho, 0.0)

    # kappa = 0: closed form of B(U, U), which only needs A^-1
    u, rho = U.u, U.rho
    u_x = derivative(u)
    m = apply_power(u, p.s)

    bracket = (
        dealiased_product(u_x, m)
        + derivative(dealiased_product(u, m))
        - u_x * p.alpha
        + dealiased_product(rho, derivative(rho)) * p.kappa
    )
    return AlgebraElement(-apply_power(bracket, -p.s), -derivative(dealiased_product(u, rho)), 0.0)


def rhs_flowmap(flow, u):
    """ phi_t = u o phi, sampled at the labels. """
    return SpectralField.from_samples(flow.grid, interpolate(u, flow.positions()))


def coupled_rhs(st, p, field_rhs=rhs_direct):
    dU = field_rhs(st, p)
    dU = AlgebraElement(dU.u, dU.rho, 0.0)

    dflow = None
    if st.flow is not None:
        dflow = rhs_flowmap(st.flow, st.U.u)

    return Tendency(dU, dflow)


def geodesic_coupled_rhs(st, p):
    return coupled_rhs(st, p, field_rhs=rhs_geodesic)


def field_rhs_for(formulation):
    if formulation == FORMULATION_DIRECT:
        return coupled_rhs
    elif formulation == FORMULATION_GEODESIC:
        return geodesic_coupled_rhs
    else:
        raise ConfigurationError(f'model.formulation: unknown formulation {formulation!r}')

"""Inner product, inertia operator and adjoint actions on the algebra of triples (u, rho, alpha)."""
from dataclasses import dataclass

import numpy as np

from .exceptions import ConfigurationError, DegenerateMetricError
from .spectral import (
    SpectralField,
    apply_power,
    circle_integral,
    dealiased_product,
    derivative,
    l2_inner,
    sobolev_inner,
)
from .validators import is_invalid_coupling, is_invalid_exponent, is_invalid_real


@dataclass(frozen=True)
class MetricParams:
    kappa: float = 1.0
    s: float = 2.0

    def __post_init__(self):
        if is_invalid_coupling(self.kappa):
            raise ConfigurationError(f'model.kappa: kappa ≥ 0 required (got {self.kappa!r})')
        if is_invalid_exponent(self.s):
            raise ConfigurationError(f'model.s: s ≥ 1 required (got {self.s!r})')

    def require_invertible(self):
        if self.kappa <= 0:
            raise DegenerateMetricError('metric inversion needs kappa > 0: the rho component is not invertible')


def _check_alpha(alpha):
    if is_invalid_real(alpha):
        raise ConfigurationError(f'alpha must be a finite real (got {alpha!r})')


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    u: SpectralField
    rho: SpectralField
    alpha: float = 0.0

    __array_ufunc__ = None

    def __post_init__(self):
        if self.u.grid != self.rho.grid:
            raise ConfigurationError(f'u and rho live on different grids (n={self.u.grid.n}, n={self.rho.grid.n})')

    @classmethod
    def zero(cls, grid, alpha=0.0):
        return cls(SpectralField.zeros(grid), SpectralField.zeros(grid), alpha)

    @property
    def grid(self):
        return self.u.grid

    def is_finite(self):
        return self.u.is_finite() and self.rho.is_finite() and bool(np.isfinite(self.alpha))

    def __add__(self, other):
        return AlgebraElement(self.u + other.u, self.rho + other.rho, self.alpha + other.alpha)

    def __sub__(self, other):
        return AlgebraElement(self.u - other.u, self.rho - other.rho, self.alpha - other.alpha)

    def __neg__(self):
        return AlgebraElement(-self.u, -self.rho, -self.alpha)

    def __mul__(self, scalar):
        return AlgebraElement(self.u * scalar, self.rho * scalar, self.alpha * scalar)

    __rmul__ = __mul__


@dataclass(frozen=True, eq=False)
class DualElement:
    f: SpectralField
    g: SpectralField
    h: float = 0.0

    def __post_init__(self):
        if self.f.grid != self.g.grid:
            raise ConfigurationError(f'f and g live on different grids (n={self.f.grid.n}, n={self.g.grid.n})')

    def is_finite(self):
        return self.f.is_finite() and self.g.is_finite() and bool(np.isfinite(self.h))


def inner_product(U1, U2, p):
    result = sobolev_inner(U1.u, U2.u, p.s)
    result += p.kappa * l2_inner(U1.rho, U2.rho)
    result -= 0.5 * (U2.alpha * circle_integral(U1.u) + U1.alpha * circle_integral(U2.u))
    result += 0.5 * U1.alpha * U2.alpha
    return result


def metric_norm_sq(U, p):
    return inner_product(U, U, p)


def dual_pairing(U, F):
    """ Integral of the dot product (u, rho, alpha).(f, g, h), the alpha slot paired by plain multiplication. """
    return l2_inner(U.u, F.f) + l2_inner(U.rho, F.g) + U.alpha * F.h


def inertia_apply(U, p):
    return DualElement(
        apply_power(U.u, p.s) - 0.5 * U.alpha,
        U.rho * p.kappa,
        0.5 * (U.alpha - circle_integral(U.u)),
    )


def inertia_invert(F, p):
    p.require_invertible()

    mean_f = circle_integral(F.f)
    return AlgebraElement(
        apply_power(F.f, -p.s) + (2.0 * F.h + mean_f),
        F.g * (1.0 / p.kappa),
        4.0 * F.h + 2.0 * mean_f,
    )


def ad(U1, U2):
    u1_x = derivative(U1.u)
    u2_x = derivative(U2.u)

    return AlgebraElement(
        dealiased_product(u1_x, U2.u) - dealiased_product(U1.u, u2_x),
        dealiased_product(derivative(U1.rho), U2.u) - dealiased_product(derivative(U2.rho), U1.u),
        0.0,
    )


def ad_transpose(U1, U3, p):
    """ ad^T_{U1} U3, obtained from the defining relation <ad_{U1} U2, U3> = <U2, ad^T_{U1} U3>.

    The pairing is written as the integral of U2 against a dual triple (f, g, 0), which is then
    pulled back through the inverse inertia operator.
    """
    p.require_invertible()

    u1_x = derivative(U1.u)
    m3 = apply_power(U3.u, p.s)

    f = (
        dealiased_product(u1_x, m3)
        + derivative(dealiased_product(U1.u, m3))
        + dealiased_product(derivative(U1.rho), U3.rho) * p.kappa
        - u1_x * U3.alpha
    )
    g = derivative(dealiased_product(U1.u, U3.rho)) * p.kappa

    return inertia_invert(DualElement(f, g, 0.0), p)


def bilinear_B(U1, U2, p):
    return (ad_transpose(U1, U2, p) + ad_transpose(U2, U1, p)) * 0.5

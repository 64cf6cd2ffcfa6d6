import math
import numpy as np
import pytest
from twocomp_ch.exceptions import ConfigurationError, DegenerateMetricError
from twocomp_ch.lie_algebra import (
    AlgebraElement,
    DualElement,
    MetricParams,
    ad,
    ad_transpose,
    bilinear_B,
    dual_pairing,
    inertia_apply,
    inertia_invert,
    inner_product,
    metric_norm_sq,
)
from twocomp_ch.pytest.asserts import assert_elements_close, assert_fields_close
from twocomp_ch.spectral import (
    PeriodicGrid,
    SpectralField,
    apply_power,
    circle_integral,
    dealiased_product,
    derivative,
)


def _element_size(U):
    return max(np.max(np.abs(U.u.samples)), np.max(np.abs(U.rho.samples)), abs(U.alpha))


@pytest.mark.parametrize(
    "kappa, s",
    [
        (-1.0, 2.0),
        (float('nan'), 2.0),
        (1.0, 0.5),
        (1.0, 0.999),
        (1.0, float('inf')),
    ],
)
def test__metric_params__invalid(kappa, s):
    with pytest.raises(ConfigurationError):
        MetricParams(kappa=kappa, s=s)


def test__metric_params__kappa_zero_not_invertible():
    with pytest.raises(DegenerateMetricError):
        MetricParams(kappa=0.0, s=2.0).require_invertible()


def test__algebra_element__grid_mismatch(grid, coarse_grid):
    with pytest.raises(ConfigurationError):
        AlgebraElement(SpectralField.zeros(grid), SpectralField.zeros(coarse_grid))


@pytest.mark.parametrize("alpha", [0.0, 1.0, -2.0, 3.5])
def test__inner_product__alpha_only(grid, alpha):
    U = AlgebraElement.zero(grid, alpha)

    assert inner_product(U, U, MetricParams(kappa=1.0, s=2.0)) == pytest.approx(alpha ** 2 / 2.0, abs=1e-14)


@pytest.mark.parametrize("alpha", [1.0, -2.0, 3.5])
@pytest.mark.parametrize("s", [1.0, 2.0])
def test__metric_norm_sq__constant_velocity(grid, alpha, s):
    U = AlgebraElement(SpectralField.constant(grid, alpha / 2.0), SpectralField.zeros(grid), alpha)

    assert metric_norm_sq(U, MetricParams(kappa=1.0, s=s)) == pytest.approx(alpha ** 2 / 4.0, rel=1e-13)


def test__metric_norm_sq__zero(grid):
    assert metric_norm_sq(AlgebraElement.zero(grid), MetricParams()) == 0.0


def test__inner_product__symmetric(faker, grid):
    U1 = faker.algebra_element(grid)
    U2 = faker.algebra_element(grid)
    p = MetricParams(kappa=0.7, s=1.5)

    assert inner_product(U1, U2, p) == pytest.approx(inner_product(U2, U1, p), rel=1e-13)


@pytest.mark.parametrize("kappa", [0.0, 1.0, 10.0])
@pytest.mark.parametrize("s", [1.0, 1.5, 2.0])
def test__metric_norm_sq__positive_definite(faker, grid, kappa, s):
    for _ in range(20):
        U = faker.algebra_element(grid)

        assert metric_norm_sq(U, MetricParams(kappa=kappa, s=s)) > 0


def test__inertia_apply__zero(grid):
    F = inertia_apply(AlgebraElement.zero(grid), MetricParams())

    assert_fields_close(F.f, 0.0, atol=0)
    assert_fields_close(F.g, 0.0, atol=0)
    assert F.h == 0


@pytest.mark.parametrize("s", [1.0, 1.5, 2.0])
def test__inertia_apply__constant(grid, s):
    U = AlgebraElement(SpectralField.constant(grid, 1.0), SpectralField.zeros(grid), 2.0)

    F = inertia_apply(U, MetricParams(kappa=1.0, s=s))

    assert_fields_close(F.f, 0.0, atol=1e-14)
    assert_fields_close(F.g, 0.0, atol=1e-14)
    assert F.h == pytest.approx(0.5, abs=1e-14)


@pytest.mark.parametrize("s", [1.0, 1.5, 2.0])
def test__inertia_apply__pairing_equals_inner_product(faker, grid, s):
    U1 = faker.algebra_element(grid)
    U2 = faker.algebra_element(grid)
    p = MetricParams(kappa=2.0, s=s)

    assert dual_pairing(U1, inertia_apply(U2, p)) == pytest.approx(inner_product(U1, U2, p), rel=1e-11, abs=1e-11)


def test__inertia_invert__zero(grid):
    F = DualElement(SpectralField.zeros(grid), SpectralField.zeros(grid), 0.0)

    assert_elements_close(inertia_invert(F, MetricParams()), AlgebraElement.zero(grid), atol=0)


def test__inertia_invert__kappa_zero(grid):
    F = DualElement(SpectralField.zeros(grid), SpectralField.zeros(grid), 0.0)

    with pytest.raises(DegenerateMetricError):
        inertia_invert(F, MetricParams(kappa=0.0, s=2.0))


@pytest.mark.parametrize("kappa", [0.5, 1.0, 4.0])
@pytest.mark.parametrize("s", [1.0, 1.5, 2.0])
def test__inertia_invert__round_trip(faker, grid, kappa, s):
    U = faker.algebra_element(grid)
    p = MetricParams(kappa=kappa, s=s)

    assert_elements_close(inertia_invert(inertia_apply(U, p), p), U, atol=1e-10 * (1 + _element_size(U)))


@pytest.mark.parametrize("kappa", [0.5, 1.0, 4.0])
def test__inertia_apply__round_trip_on_duals(faker, grid, kappa):
    F = faker.dual_element(grid)
    p = MetricParams(kappa=kappa, s=2.0)

    G = inertia_apply(inertia_invert(F, p), p)

    scale = 1.0 + max(np.max(np.abs(F.f.samples)), np.max(np.abs(F.g.samples)), abs(F.h))
    assert_fields_close(G.f, F.f, atol=1e-10 * scale)
    assert_fields_close(G.g, F.g, atol=1e-10 * scale)
    assert G.h == pytest.approx(F.h, abs=1e-10 * scale)


def test__inertia_invert__without_h(faker, grid):
    F = faker.dual_element(grid, h=0.0)
    p = MetricParams(kappa=2.0, s=1.5)

    U = inertia_invert(F, p)

    mean_f = circle_integral(F.f)
    assert U.alpha == pytest.approx(2.0 * mean_f, abs=1e-14)
    assert_fields_close(U.u, apply_power(F.f, -1.5) + mean_f, atol=1e-13)
    assert_fields_close(U.rho, F.g * 0.5, atol=1e-14)


def test__ad__diagonal_vanishes(faker, grid):
    U = faker.algebra_element(grid)

    V = ad(U, U)

    assert_fields_close(V.u, 0.0, atol=0)
    assert_fields_close(V.rho, 0.0, atol=0)
    assert V.alpha == 0


def test__ad__constants(grid):
    U1 = AlgebraElement(SpectralField.constant(grid, 1.5), SpectralField.zeros(grid))
    U2 = AlgebraElement(SpectralField.constant(grid, -0.5), SpectralField.zeros(grid))

    assert_elements_close(ad(U1, U2), AlgebraElement.zero(grid), atol=0)


def test__ad__trig_identity():
    grid = PeriodicGrid(16)
    U1 = AlgebraElement(SpectralField.from_function(grid, lambda x: np.cos(2 * np.pi * x)), SpectralField.zeros(grid))
    U2 = AlgebraElement(SpectralField.from_function(grid, lambda x: np.sin(2 * np.pi * x)), SpectralField.zeros(grid))

    assert_fields_close(ad(U1, U2).u, -2.0 * math.pi, atol=1e-13)


@pytest.mark.parametrize("kappa", [0.5, 1.0, 4.0])
@pytest.mark.parametrize("s", [1.0, 1.5, 2.0])
def test__ad_transpose__adjoint_identity(faker, grid, kappa, s):
    p = MetricParams(kappa=kappa, s=s)

    for _ in range(5):
        U1, U2, U3 = faker.algebra_element(grid), faker.algebra_element(grid), faker.algebra_element(grid)

        lhs = inner_product(ad(U1, U2), U3, p)
        rhs = inner_product(U2, ad_transpose(U1, U3, p), p)

        assert abs(lhs - rhs) <= 1e-9 * (1.0 + max(abs(lhs), abs(rhs)))


@pytest.mark.parametrize("s", [1.0, 2.0])
def test__ad_transpose__diagonal_closed_form(faker, grid, s):
    U = faker.algebra_element(grid)
    p = MetricParams(kappa=1.5, s=s)

    u, rho = U.u, U.rho
    u_x = derivative(u)
    m = apply_power(u, s)
    bracket = (
        dealiased_product(u_x, m)
        + derivative(dealiased_product(u, m))
        - u_x * U.alpha
        + dealiased_product(rho, derivative(rho)) * p.kappa
    )

    V = ad_transpose(U, U, p)

    scale = 1.0 + _element_size(V)
    assert_fields_close(V.u, apply_power(bracket, -s), atol=1e-9 * scale)
    assert_fields_close(V.rho, derivative(dealiased_product(u, rho)), atol=1e-9 * scale)
    assert abs(V.alpha) <= 1e-9 * scale


def test__ad_transpose__zero_arguments(faker, grid):
    U = faker.algebra_element(grid)
    zero = AlgebraElement.zero(grid)
    p = MetricParams(kappa=1.0, s=2.0)

    assert_elements_close(ad_transpose(zero, U, p), zero, atol=1e-14)
    assert_elements_close(ad_transpose(U, zero, p), zero, atol=1e-14)


def test__ad_transpose__kappa_zero(faker, grid):
    U = faker.algebra_element(grid)

    with pytest.raises(DegenerateMetricError):
        ad_transpose(U, U, MetricParams(kappa=0.0, s=2.0))


def test__bilinear_B__diagonal(faker, grid):
    U = faker.algebra_element(grid)
    p = MetricParams(kappa=1.0, s=1.5)

    assert_elements_close(bilinear_B(U, U, p), ad_transpose(U, U, p), atol=1e-12)


def test__bilinear_B__symmetric(faker, grid):
    U1, U2 = faker.algebra_element(grid), faker.algebra_element(grid)
    p = MetricParams(kappa=1.0, s=2.0)

    assert_elements_close(bilinear_B(U1, U2, p), bilinear_B(U2, U1, p), atol=1e-12)


@pytest.mark.parametrize("scale", [-1.0, 0.5, 3.0])
def test__bilinear_B__quadratic_scaling(faker, grid, scale):
    U = faker.algebra_element(grid)
    p = MetricParams(kappa=1.0, s=1.0)

    B = bilinear_B(U, U, p)
    scaled = bilinear_B(U * scale, U * scale, p)

    assert_elements_close(scaled, B * scale ** 2, atol=1e-10 * (1.0 + _element_size(B) * scale ** 2))

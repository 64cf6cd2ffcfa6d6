import math
import numpy as np
import pytest
from twocomp_ch.exceptions import ConfigurationError, EvaluationError
from twocomp_ch.pytest.asserts import assert_fields_close
from twocomp_ch.spectral import (
    MultiplierSymbol,
    PeriodicGrid,
    SpectralField,
    apply_power,
    band_limit,
    circle_integral,
    conjugate_mirror,
    dealiased_product,
    derivative,
    interpolate,
    l2_inner,
    lambda_power,
    oversample,
    sobolev_inner,
    sobolev_norm_sq,
    sup_norm,
    tail_fraction,
    to_physical,
    to_spectral,
)

TWO_PI = 2.0 * math.pi


def _mode(grid, function, k=1):
    return SpectralField.from_function(grid, lambda x: function(TWO_PI * k * x))


def _integral_of_product(f, g):
    return circle_integral(SpectralField.from_samples(f.grid, f.samples * g.samples))


@pytest.mark.parametrize("n", [0, 6, 7, 9, 255, 8.0, True, '64', None])
def test__periodic_grid__invalid_size(n):
    with pytest.raises(ConfigurationError):
        PeriodicGrid(n)


@pytest.mark.parametrize("n", [8, 10, 64, 256])
def test__periodic_grid__uniform_points(n):
    grid = PeriodicGrid(n)

    assert len(grid.points) == n
    assert grid.points[0] == 0
    np.testing.assert_allclose(np.diff(grid.points), 1.0 / n, atol=1e-15)
    assert grid.dealias_cutoff == n // 3


def test__to_spectral__constant(grid):
    c = to_spectral(np.ones(grid.n), grid)

    assert c[0] == pytest.approx(1.0, abs=1e-15)
    assert np.max(np.abs(c[1:])) < 1e-15


def test__to_spectral__cosine(grid):
    c = to_spectral(np.cos(TWO_PI * np.asarray(grid.points)), grid)

    assert c[1] == pytest.approx(0.5, abs=1e-14)
    assert c[-1] == pytest.approx(0.5, abs=1e-14)

    rest = np.delete(c, [1, grid.n - 1])
    assert np.max(np.abs(rest)) < 1e-14


def test__to_physical__round_trip(grid):
    samples = np.random.default_rng(7).standard_normal(grid.n)

    np.testing.assert_allclose(to_physical(to_spectral(samples, grid), grid), samples, atol=1e-12)


def test__to_spectral__coefficients_conjugate_symmetric(grid):
    f = SpectralField.from_samples(grid, np.random.default_rng(3).standard_normal(grid.n))

    k = np.arange(1, grid.nyquist)
    np.testing.assert_allclose(f.coeffs[-k], np.conj(f.coeffs[k]), atol=1e-15)


@pytest.mark.parametrize("length", [0, 63, 65])
def test__to_spectral__length_mismatch(grid, length):
    with pytest.raises(ConfigurationError):
        to_spectral(np.zeros(length), grid)


def test__to_physical__imaginary_residue(grid):
    coeffs = np.zeros(grid.n, dtype=complex)
    coeffs[1] = 1.0

    with pytest.raises(EvaluationError):
        to_physical(coeffs, grid)


def test__to_physical__accepts_rounding_level_asymmetry(grid):
    coeffs = to_spectral(np.cos(TWO_PI * np.asarray(grid.points)), grid)
    coeffs[1] += 1e-13j

    np.testing.assert_allclose(to_physical(coeffs, grid), np.cos(TWO_PI * np.asarray(grid.points)), atol=1e-12)


def test__from_coeffs__stores_symmetrized_coefficients(grid):
    coeffs = to_spectral(np.cos(TWO_PI * np.asarray(grid.points)), grid)
    coeffs[1] += 1e-13j
    coeffs[0] += 1e-13j

    f = SpectralField.from_coeffs(grid, coeffs)

    np.testing.assert_array_equal(f.coeffs, conjugate_mirror(f.coeffs))
    assert f.coeffs[0].imag == 0.0


@pytest.mark.parametrize("s", [1.0, 2.0, 2.5])
def test__apply_power__single_mode_large_symbol(s):
    grid = PeriodicGrid(256)
    f = _mode(grid, np.cos)

    expected = f * (1.0 + 4.0 * math.pi ** 2) ** s

    assert_fields_close(apply_power(f, s), expected, atol=1e-12 * (1.0 + 4.0 * math.pi ** 2) ** s)


def test__apply_power__coefficients_stay_conjugate_symmetric(faker):
    grid = PeriodicGrid(256)
    f = faker.band_limited_field(grid)

    for result in [
        apply_power(f, 2.0),
        apply_power(apply_power(f, 2.0), -2.0),
        derivative(apply_power(f, 2.5)),
        3.0 * f - apply_power(f, 1.0) + 2.0,
        dealiased_product(f, derivative(f)),
    ]:
        np.testing.assert_array_equal(result.coeffs, conjugate_mirror(result.coeffs))
        assert result.coeffs[grid.nyquist].imag == 0.0


def test__spectral_field__scalar_arithmetic(grid):
    f = _mode(grid, np.cos)

    g = 2.0 + f * 3.0

    assert circle_integral(g) == pytest.approx(2.0, abs=1e-14)
    assert g.coeffs[0] == pytest.approx(2.0, abs=1e-14)
    assert_fields_close(g - 2.0, f * 3.0, atol=1e-14)


def test__spectral_field__grid_mismatch(grid, coarse_grid):
    with pytest.raises(ConfigurationError):
        SpectralField.zeros(grid) + SpectralField.zeros(coarse_grid)


def test__spectral_field__read_only(grid):
    f = SpectralField.zeros(grid)

    with pytest.raises(ValueError):
        f.samples[0] = 1.0


def test__derivative__constant(grid):
    assert_fields_close(derivative(SpectralField.constant(grid, 3.5)), 0.0)


def test__derivative__sine(grid):
    assert_fields_close(derivative(_mode(grid, np.sin)), _mode(grid, np.cos) * TWO_PI, atol=1e-12)


def test__derivative__cosine_mode_two(grid):
    assert_fields_close(derivative(_mode(grid, np.cos, 2)), _mode(grid, np.sin, 2) * (-2.0 * TWO_PI), atol=1e-12)


@pytest.mark.parametrize("s", [-2.0, -0.5, 0.0, 1.0, 1.5, 2.5])
def test__apply_power__constant_fixed_point(grid, s):
    assert_fields_close(apply_power(SpectralField.constant(grid, 1.0), s), 1.0, atol=1e-13)


def test__apply_power__single_mode(grid):
    expected = _mode(grid, np.cos) * (1.0 + 4.0 * math.pi ** 2)

    assert_fields_close(apply_power(_mode(grid, np.cos), 1.0), expected, atol=1e-11)


@pytest.mark.parametrize("s", [1.0, 1.5, 2.0, 2.5])
def test__apply_power__inverse_composition(faker, grid, s):
    f = faker.band_limited_field(grid)

    assert_fields_close(apply_power(apply_power(f, s), -s), f, atol=1e-11)


@pytest.mark.parametrize("s", [1.0, 1.5, 2.0, 2.5])
def test__apply_power__commutes_with_derivative(faker, grid, s):
    f = faker.band_limited_field(grid)

    lhs = apply_power(derivative(f), s)
    rhs = derivative(apply_power(f, s))

    scale = 1.0 + np.max(np.abs(lhs.samples))
    assert np.max(np.abs(lhs.samples - rhs.samples)) <= 1e-10 * scale


@pytest.mark.parametrize("s", [1.0, 1.5, 2.0, 2.5])
def test__apply_power__self_adjoint(faker, grid, s):
    f = faker.band_limited_field(grid)
    g = faker.band_limited_field(grid)

    Af, Ag = apply_power(f, s), apply_power(g, s)
    lhs = _integral_of_product(Af, g)
    rhs = _integral_of_product(f, Ag)

    scale = 1.0 + sup_norm(Af) * sup_norm(g) + sup_norm(f) * sup_norm(Ag)
    assert abs(lhs - rhs) <= 1e-10 * scale


@pytest.mark.parametrize("s", [0.5, 1.0, 2.0])
def test__apply_power__inverse_preserves_mean(faker, grid, s):
    w = faker.band_limited_field(grid)

    assert circle_integral(apply_power(w, -s)) == pytest.approx(circle_integral(w), abs=1e-12)


@pytest.mark.parametrize("s", [0.0, 0.5, 1.0, 2.0, 3.0])
def test__multiplier_symbol__properties(grid, s):
    values = MultiplierSymbol(s).values(grid)
    k = np.arange(1, grid.nyquist)

    assert values[0] == 1.0
    assert np.all(values >= 1.0)
    np.testing.assert_array_equal(values[k], values[-k])


def test__multiplier_symbol__apply(faker, grid):
    f = faker.band_limited_field(grid)

    assert_fields_close(MultiplierSymbol(1.5).apply(f), apply_power(f, 1.5), atol=0)


@pytest.mark.parametrize(
    "field, s, expected",
    [
        (lambda g: SpectralField.zeros(g), 1.0, 0.0),
        (lambda g: SpectralField.constant(g, 1.0), 2.5, 1.0),
        (lambda g: _mode(g, np.cos), 1.0, (1.0 + 4.0 * math.pi ** 2) / 2.0),
        (lambda g: _mode(g, np.sin, 3), 0.0, 0.5),
    ],
)
def test__sobolev_norm_sq__values(grid, field, s, expected):
    assert sobolev_norm_sq(field(grid), s) == pytest.approx(expected, rel=1e-12, abs=1e-15)


@pytest.mark.parametrize("s", [0.0, 1.0, 2.0])
def test__sobolev_norm_sq__matches_integral_form(faker, grid, s):
    f = faker.band_limited_field(grid)

    assert sobolev_norm_sq(f, s) == pytest.approx(_integral_of_product(f, apply_power(f, s)), rel=1e-11)


@pytest.mark.parametrize("s", [1.0, 1.5, 2.0, 2.5])
def test__sobolev_norm_sq__dominates_l2(faker, grid, s):
    f = faker.band_limited_field(grid)

    assert _integral_of_product(f, f) <= sobolev_norm_sq(f, s) + 1e-12


def test__sobolev_inner__symmetric(faker, grid):
    f = faker.band_limited_field(grid)
    g = faker.band_limited_field(grid)

    assert sobolev_inner(f, g, 1.7) == sobolev_inner(g, f, 1.7)


@pytest.mark.parametrize("s", [1.0, 1.5, 2.0, 2.5])
def test__lambda_power__isometry(faker, grid, s):
    f = faker.band_limited_field(grid)
    g = faker.band_limited_field(grid)

    scale = 1.0 + sobolev_norm_sq(f, s) + sobolev_norm_sq(g, s)
    assert abs(l2_inner(lambda_power(f, s), lambda_power(g, s)) - sobolev_inner(f, g, s)) <= 1e-10 * scale


def test__circle_integral__values(grid):
    assert circle_integral(SpectralField.constant(grid, 1.0)) == pytest.approx(1.0, abs=1e-15)

    for k in [1, 2, 5]:
        assert abs(circle_integral(_mode(grid, np.sin, k))) < 1e-13


def test__circle_integral__equals_mean_coefficient(faker, grid):
    f = faker.band_limited_field(grid)

    assert circle_integral(f) == pytest.approx(f.coeffs[0].real, abs=1e-14)


def test__dealiased_product__identity(faker, grid):
    f = faker.band_limited_field(grid)

    assert_fields_close(dealiased_product(f, SpectralField.constant(grid, 1.0)), f, atol=1e-13)


def test__dealiased_product__trig_identity():
    grid = PeriodicGrid(16)
    cos = _mode(grid, np.cos)

    expected = _mode(grid, np.cos, 2) * 0.5 + 0.5

    assert_fields_close(dealiased_product(cos, cos), expected, atol=1e-14)


def test__dealiased_product__truncation(grid):
    rng = np.random.default_rng(11)
    f = SpectralField.from_samples(grid, rng.standard_normal(grid.n))
    g = SpectralField.from_samples(grid, rng.standard_normal(grid.n))

    result = dealiased_product(f, g)

    assert np.all(result.coeffs[~grid.dealias_mask] == 0)


def test__dealiased_product__grid_mismatch(grid, coarse_grid):
    with pytest.raises(ConfigurationError):
        dealiased_product(SpectralField.zeros(grid), SpectralField.zeros(coarse_grid))


def test__band_limit__removes_high_modes(grid):
    f = _mode(grid, np.cos, 1) + _mode(grid, np.cos, grid.dealias_cutoff + 1)

    assert_fields_close(band_limit(f), _mode(grid, np.cos, 1), atol=1e-13)


def test__interpolate__grid_points(faker, grid):
    f = faker.band_limited_field(grid)

    np.testing.assert_allclose(interpolate(f, grid.points), f.samples, atol=1e-11)


def test__interpolate__sine_off_grid(grid):
    assert interpolate(_mode(grid, np.sin), [1.0 / 8.0])[0] == pytest.approx(math.sin(math.pi / 4.0), abs=1e-13)


def test__interpolate__wraps_points(grid):
    f = _mode(grid, np.sin)

    np.testing.assert_allclose(interpolate(f, [0.3, 1.3, -0.7]), math.sin(TWO_PI * 0.3), atol=1e-13)


def test__interpolate__constant(grid):
    np.testing.assert_allclose(interpolate(SpectralField.constant(grid, -2.5), [0.123, 0.77, 0.5]), -2.5, atol=1e-13)


def test__interpolate__nyquist_mode_is_real(grid):
    f = SpectralField.from_samples(grid, (-1.0) ** np.arange(grid.n))

    assert interpolate(f, [0.0])[0] == pytest.approx(1.0, abs=1e-13)
    assert interpolate(f, [0.5 / grid.n])[0] == pytest.approx(0.0, abs=1e-13)


def test__oversample__contains_coarse_grid(faker, grid):
    f = faker.band_limited_field(grid)

    np.testing.assert_allclose(oversample(f)[::4], f.samples, atol=1e-12)


def test__sup_norm__zero(grid):
    assert sup_norm(SpectralField.zeros(grid)) == 0


def test__sup_norm__cosine():
    grid = PeriodicGrid(10)

    assert sup_norm(_mode(grid, np.cos)) == pytest.approx(1.0, abs=1e-3)


def test__sup_norm__at_least_sample_max(faker, grid):
    f = faker.band_limited_field(grid)

    assert sup_norm(f) >= np.max(np.abs(f.samples))


@pytest.mark.parametrize(
    "k, expected",
    [
        (0, 0.0),
        (1, 0.0),
        (10, 0.0),
        (16, 1.0),
    ],
)
def test__tail_fraction__single_mode(grid, k, expected):
    f = _mode(grid, np.cos, k) if k else SpectralField.constant(grid, 1.0)

    assert tail_fraction(f) == pytest.approx(expected, abs=1e-12)


def test__tail_fraction__zero_field(grid):
    assert tail_fraction(SpectralField.zeros(grid)) == 0.0


def test__random_band_limited__band(faker, grid):
    f = faker.band_limited_field(grid)

    outside = np.abs(grid.wavenumbers) > grid.n // 6
    assert np.all(f.coeffs[outside] == 0)
    assert f.is_finite()


def test__random_band_limited__invalid_band(faker, grid):
    with pytest.raises(ConfigurationError):
        faker.band_limited_field(grid, max_wavenumber=grid.dealias_cutoff + 1)

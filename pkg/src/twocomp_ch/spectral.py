"""Fourier pseudospectral primitives on the unit-length circle R/Z.

Fields are real and periodic, held both as samples on the uniform grid
x_j = j/n and as Fourier coefficients c_k of the basis exp(2*pi*i*k*x),
stored in numpy FFT order (k = 0..n/2-1, -n/2..-1). Coefficients are kept
exactly conjugate symmetric, c_{-k} = conj(c_k), so every field stays real.
"""
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .exceptions import ConfigurationError, EvaluationError
from .validators import is_invalid_grid_size

IMAGINARY_RESIDUE_TOLERANCE = 1e-10
OVERSAMPLING = 4


@dataclass(frozen=True)
class PeriodicGrid:
    n: int = 256

    def __post_init__(self):
        if is_invalid_grid_size(self.n):
            raise ConfigurationError(f'grid.n: n must be an even integer ≥ 8 (got {self.n!r})')

    @cached_property
    def points(self):
        result = np.arange(self.n) / self.n
        result.setflags(write=False)
        return result

    @cached_property
    def wavenumbers(self):
        result = np.fft.fftfreq(self.n, d=1.0 / self.n)
        result.setflags(write=False)
        return result

    @property
    def nyquist(self):
        return self.n // 2

    @property
    def dealias_cutoff(self):
        return self.n // 3

    @cached_property
    def dealias_mask(self):
        result = np.abs(self.wavenumbers) <= self.dealias_cutoff
        result.setflags(write=False)
        return result


@dataclass(frozen=True, eq=False)
class SpectralField:
    grid: PeriodicGrid
    samples: np.ndarray = field(repr=False)
    coeffs: np.ndarray = field(repr=False)

    # Scalars on the left of an operator must defer to the field, not broadcast into it
    __array_ufunc__ = None

    def __post_init__(self):
        self.samples.setflags(write=False)
        self.coeffs.setflags(write=False)

    @classmethod
    def from_samples(cls, grid, samples):
        samples = np.array(samples, dtype=float)
        return cls(grid, samples, to_spectral(samples, grid))

    @classmethod
    def from_coeffs(cls, grid, coeffs):
        coeffs = np.array(coeffs, dtype=complex)
        _check_length(coeffs, grid)
        _check_conjugate_symmetry(coeffs)

        coeffs = (coeffs + conjugate_mirror(coeffs)) / 2.0
        return cls(grid, _inverse(coeffs, grid), coeffs)

    @classmethod
    def from_function(cls, grid, function):
        return cls.from_samples(grid, function(np.asarray(grid.points)))

    @classmethod
    def constant(cls, grid, value):
        coeffs = np.zeros(grid.n, dtype=complex)
        coeffs[0] = float(value)
        return cls(grid, np.full(grid.n, float(value)), coeffs)

    @classmethod
    def zeros(cls, grid):
        return cls.constant(grid, 0.0)

    def is_finite(self):
        return bool(np.all(np.isfinite(self.samples)))

    def _check_grid(self, other):
        if other.grid != self.grid:
            raise ConfigurationError(f'grid mismatch: n={self.grid.n} and n={other.grid.n}')

    def __add__(self, other):
        if isinstance(other, SpectralField):
            self._check_grid(other)
            return SpectralField(self.grid, self.samples + other.samples, self.coeffs + other.coeffs)

        coeffs = self.coeffs.copy()
        coeffs[0] += other
        return SpectralField(self.grid, self.samples + other, coeffs)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return SpectralField(self.grid, -self.samples, -self.coeffs)

    def __mul__(self, scalar):
        if isinstance(scalar, SpectralField):
            return NotImplemented

        return SpectralField(self.grid, self.samples * scalar, self.coeffs * scalar)

    __rmul__ = __mul__


@dataclass(frozen=True)
class MultiplierSymbol:
    """ The symbol (1 + 4 pi^2 k^2)^s of A^s; s/2 gives Lambda^s. """
    s: float

    def values(self, grid):
        return inertia_symbol(grid, self.s)

    def apply(self, f):
        return apply_power(f, self.s)


def _check_length(values, grid):
    if np.shape(values) != (grid.n,):
        raise ConfigurationError(f'field length {np.shape(values)} does not match grid n={grid.n}')


def conjugate_mirror(coeffs):
    """ conj(c_{-k}) at every k, in FFT order. """
    return np.conj(np.roll(np.asarray(coeffs)[::-1], 1))


def to_spectral(samples, grid):
    _check_length(samples, grid)
    n = grid.n
    half = np.fft.rfft(np.asarray(samples, dtype=float)) / n

    coeffs = np.empty(n, dtype=complex)
    coeffs[:n // 2 + 1] = half
    coeffs[n // 2 + 1:] = np.conj(half[1:n // 2][::-1])
    coeffs[[0, n // 2]] = half[[0, n // 2]].real
    return coeffs


def _check_conjugate_symmetry(coeffs):
    # Asymmetric coefficients are what leave an imaginary residue in the inverse transform
    scale = float(np.max(np.abs(coeffs), initial=0.0))
    residue = float(np.max(np.abs(coeffs - conjugate_mirror(coeffs)), initial=0.0))
    if residue > IMAGINARY_RESIDUE_TOLERANCE * scale:
        raise EvaluationError(f'imaginary residue {residue:.3e} in inverse transform (field scale {scale:.3e})')


def _inverse(coeffs, grid):
    return np.fft.irfft(coeffs[:grid.n // 2 + 1], grid.n) * grid.n


def to_physical(coeffs, grid):
    _check_length(coeffs, grid)
    coeffs = np.asarray(coeffs, dtype=complex)
    _check_conjugate_symmetry(coeffs)

    return _inverse(coeffs, grid)


def inertia_symbol(grid, s):
    # exp/log1p keeps fractional and negative powers exact: the base is >= 1
    return np.exp(s * np.log1p(4.0 * np.pi ** 2 * grid.wavenumbers ** 2))


def derivative_symbol(grid):
    result = 2j * np.pi * grid.wavenumbers
    # The Nyquist mode has no real odd derivative on the grid
    result[grid.nyquist] = 0.0
    return result


def derivative(f):
    return SpectralField.from_coeffs(f.grid, f.coeffs * derivative_symbol(f.grid))


def apply_power(f, s, symbol=inertia_symbol):
    return SpectralField.from_coeffs(f.grid, f.coeffs * symbol(f.grid, s))


def lambda_power(f, s):
    return apply_power(f, s / 2.0)


def sobolev_inner(f, g, s):
    """ Sum of (1 + 4 pi^2 k^2)^s Re(conj(f_k) g_k); symmetric in f and g to the last bit. """
    f._check_grid(g)
    pairing = f.coeffs.real * g.coeffs.real + f.coeffs.imag * g.coeffs.imag
    return float(np.sum(inertia_symbol(f.grid, s) * pairing))


def sobolev_norm_sq(f, s):
    return sobolev_inner(f, f, s)


def l2_inner(f, g):
    return sobolev_inner(f, g, 0.0)


def circle_integral(f):
    return float(np.mean(f.samples))


def band_limit(f):
    return SpectralField.from_coeffs(f.grid, np.where(f.grid.dealias_mask, f.coeffs, 0.0))


def dealiased_product(f, g):
    f._check_grid(g)
    return band_limit(SpectralField.from_samples(f.grid, f.samples * g.samples))


def interpolate(f, points):
    """ Evaluate the truncated Fourier series at arbitrary points by direct summation. """
    x = np.mod(np.asarray(points, dtype=float), 1.0)
    k = f.grid.wavenumbers

    basis = np.exp(2j * np.pi * np.multiply.outer(x, k))
    # Split the Nyquist mode symmetrically so the interpolant is real off the grid
    basis[:, f.grid.nyquist] = np.cos(np.pi * f.grid.n * x)

    return (basis @ f.coeffs).real


def oversample(f, factor=OVERSAMPLING):
    n = f.grid.n
    padded = np.zeros(factor * n, dtype=complex)

    k = f.grid.wavenumbers.astype(int)
    regular = k != -f.grid.nyquist
    padded[k[regular] % (factor * n)] = f.coeffs[regular]

    nyquist = f.coeffs[f.grid.nyquist]
    padded[f.grid.nyquist] += nyquist / 2.0
    padded[factor * n - f.grid.nyquist] += nyquist / 2.0

    return (np.fft.ifft(padded) * factor * n).real


def sup_norm(f):
    """ max |f| on a 4x oversampled grid: an approximation from below of the true supremum. """
    return float(np.max(np.abs(oversample(f))))


def min_value(f):
    return float(np.min(oversample(f)))


def tail_fraction(f):
    """ Share of the L2 energy held by n/6 < |k| <= n/3, the outer half of the retained band. """
    energy = np.abs(f.coeffs) ** 2
    total = float(np.sum(energy))
    if total == 0.0:
        return 0.0

    tail = np.abs(f.grid.wavenumbers) > f.grid.n // 6
    return float(np.sum(energy[tail])) / total


def random_band_limited(grid, rng, max_wavenumber=None, amplitude=1.0, decay=0.5):
    """ Random real field with content in |k| <= max_wavenumber and exp(-decay*|k|) amplitudes. """
    if max_wavenumber is None:
        max_wavenumber = grid.n // 6

    if not 0 <= max_wavenumber <= grid.dealias_cutoff:
        raise ConfigurationError(f'max_wavenumber {max_wavenumber} outside 0..{grid.dealias_cutoff}')

    coeffs = np.zeros(grid.n, dtype=complex)
    coeffs[0] = amplitude * rng.standard_normal()

    for k in range(1, max_wavenumber + 1):
        c = amplitude * np.exp(-decay * k) * (rng.standard_normal() + 1j * rng.standard_normal()) / 2.0
        coeffs[k] = c
        coeffs[-k] = np.conj(c)

    return SpectralField.from_coeffs(grid, coeffs)

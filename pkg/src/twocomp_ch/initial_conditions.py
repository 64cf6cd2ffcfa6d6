from dataclasses import dataclass, field

import numpy as np

from .exceptions import ConfigurationError
from .lie_algebra import AlgebraElement
from .spectral import SpectralField, band_limit
from .validators import is_invalid_positive, is_invalid_real

KIND_SINGLE_MODE = 'single_mode'
KIND_FOURIER_LIST = 'fourier_list'
KIND_GAUSSIAN_BUMP = 'gaussian_bump'
KINDS = [KIND_SINGLE_MODE, KIND_FOURIER_LIST, KIND_GAUSSIAN_BUMP]

TARGETS = ['u', 'rho', 'both']

GAUSSIAN_IMAGES = 3


@dataclass(frozen=True)
class InitialConditionSpec:
    kind: str = None
    target: str = 'u'
    amplitude: float = 1.0
    wavenumber: int = 1
    phase: float = 0.0
    center: float = 0.5
    width: float = 0.1
    u_coefficients: list = field(default_factory=list)
    rho_coefficients: list = field(default_factory=list)
    u_offset: float = 0.0
    rho_offset: float = 0.0

    def __post_init__(self):
        if self.kind is not None and self.kind not in KINDS:
            raise ConfigurationError(f'initial.kind: must be one of {", ".join(KINDS)} (got {self.kind!r})')
        if self.target not in TARGETS:
            raise ConfigurationError(f'initial.target: must be one of {", ".join(TARGETS)} (got {self.target!r})')

        for name in ['amplitude', 'phase', 'center', 'u_offset', 'rho_offset']:
            if is_invalid_real(getattr(self, name)):
                raise ConfigurationError(f'initial.{name}: must be a finite real (got {getattr(self, name)!r})')

        if self.kind == KIND_GAUSSIAN_BUMP and is_invalid_positive(self.width):
            raise ConfigurationError(f'initial.width: width > 0 required (got {self.width!r})')

    @classmethod
    def from_dict(cls, data):
        return cls(**data)

    @property
    def targets_u(self):
        return self.target in ('u', 'both')

    @property
    def targets_rho(self):
        return self.target in ('rho', 'both')


def _check_band(k, grid, name):
    if int(k) != k or k < 0:
        raise ConfigurationError(f'initial.{name}: wavenumbers must be non-negative integers (got {k!r})')
    if k > grid.dealias_cutoff:
        raise ConfigurationError(
            f'initial.{name}: wavenumber {k} lies beyond the dealiasing band |k| ≤ {grid.dealias_cutoff} for n={grid.n}'
        )


def _single_mode(spec, grid):
    _check_band(spec.wavenumber, grid, 'wavenumber')
    return SpectralField.from_function(
        grid, lambda x: spec.amplitude * np.cos(2.0 * np.pi * spec.wavenumber * x + spec.phase)
    )


def _fourier_list(coefficients, grid, name):
    coeffs = np.zeros(grid.n, dtype=complex)

    for entry in coefficients:
        if len(entry) != 3:
            raise ConfigurationError(f'initial.{name}: entries are [k, re, im] (got {entry!r})')

        k, re, im = entry
        _check_band(k, grid, name)
        if is_invalid_real(re) or is_invalid_real(im):
            raise ConfigurationError(f'initial.{name}: coefficient parts must be finite reals (got {entry!r})')

        k = int(k)
        if k == 0:
            if im != 0:
                raise ConfigurationError(f'initial.{name}: the k=0 coefficient must be real (got {entry!r})')
            coeffs[0] += re
        else:
            coeffs[k] += complex(re, im)
            coeffs[-k] += complex(re, -im)

    return SpectralField.from_coeffs(grid, coeffs)


def _gaussian_bump(spec, grid):
    def bump(x):
        images = np.arange(-GAUSSIAN_IMAGES, GAUSSIAN_IMAGES + 1)
        offsets = np.subtract.outer(x, spec.center + images)
        return spec.amplitude * np.sum(np.exp(-offsets ** 2 / (2.0 * spec.width ** 2)), axis=1)

    return band_limit(SpectralField.from_function(grid, bump))


def build_initial_condition(spec, grid, alpha=0.0):
    u = SpectralField.zeros(grid)
    rho = SpectralField.zeros(grid)

    if spec.kind == KIND_FOURIER_LIST:
        u = _fourier_list(spec.u_coefficients, grid, 'u_coefficients')
        rho = _fourier_list(spec.rho_coefficients, grid, 'rho_coefficients')
    elif spec.kind is not None:
        shape = _single_mode(spec, grid) if spec.kind == KIND_SINGLE_MODE else _gaussian_bump(spec, grid)
        if spec.targets_u:
            u = shape
        if spec.targets_rho:
            rho = shape

    return AlgebraElement(u + spec.u_offset, rho + spec.rho_offset, alpha)

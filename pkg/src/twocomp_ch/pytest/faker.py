import numpy as np
from faker.providers import BaseProvider

from twocomp_ch.lie_algebra import AlgebraElement, DualElement
from twocomp_ch.spectral import PeriodicGrid, min_value, random_band_limited


class SpectralFakerProvider(BaseProvider):
    """ Random band-limited fields drawn from the Faker instance's seed.

    Content is kept in |k| <= n/6 by default, so every quadratic product
    of two generated fields is resolved exactly by the 2/3 rule.
    """

    def numpy_rng(self):
        return np.random.default_rng(self.generator.random.getrandbits(64))

    def periodic_grid(self, n=64):
        return PeriodicGrid(n)

    def band_limited_field(self, grid, max_wavenumber=None, amplitude=1.0, decay=0.5):
        return random_band_limited(grid, self.numpy_rng(), max_wavenumber=max_wavenumber, amplitude=amplitude, decay=decay)

    def positive_field(self, grid, floor=1.0, **kwargs):
        f = self.band_limited_field(grid, **kwargs)
        return f + (floor - min_value(f))

    def alpha(self, limit=5.0):
        return self.generator.pyfloat(min_value=-limit, max_value=limit)

    def algebra_element(self, grid, alpha=None, **kwargs):
        if alpha is None:
            alpha = self.alpha()

        return AlgebraElement(self.band_limited_field(grid, **kwargs), self.band_limited_field(grid, **kwargs), alpha)

    def dual_element(self, grid, h=None, **kwargs):
        if h is None:
            h = self.alpha()

        return DualElement(self.band_limited_field(grid, **kwargs), self.band_limited_field(grid, **kwargs), h)

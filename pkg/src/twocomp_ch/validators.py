import math
import numpy as np


def is_invalid_grid_size(n):
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        return True

    return n < 8 or n % 2 != 0


def is_invalid_real(value):
    if isinstance(value, bool):
        return True

    try:
        return not math.isfinite(float(value))
    except (TypeError, ValueError):
        return True


def is_invalid_exponent(s):
    """ Inertia exponents must be finite and at least 1. """
    return is_invalid_real(s) or s < 1


def is_invalid_coupling(kappa):
    return is_invalid_real(kappa) or kappa < 0


def is_invalid_positive(value):
    return is_invalid_real(value) or value <= 0


def is_invalid_fraction(value):
    return is_invalid_real(value) or not (0 < value < 1)


def is_invalid_count(value):
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        return True

    return value < 1


def is_finite_array(values):
    return bool(np.all(np.isfinite(values)))

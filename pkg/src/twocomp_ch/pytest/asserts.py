import csv
import math
import numpy as np


def assert_fields_close(actual, expected, atol=1e-12, rtol=0.0):
    expected_samples = expected.samples if hasattr(expected, 'samples') else np.broadcast_to(expected, actual.samples.shape)
    np.testing.assert_allclose(actual.samples, expected_samples, atol=atol, rtol=rtol)


def assert_elements_close(actual, expected, atol=1e-12):
    assert_fields_close(actual.u, expected.u, atol=atol)
    assert_fields_close(actual.rho, expected.rho, atol=atol)
    assert abs(actual.alpha - expected.alpha) <= atol


def read_csv(path):
    with open(path, newline='', encoding='utf-8') as f:
        return list(csv.DictReader(f))


def assert_csv_finite(path, columns=None):
    rows = read_csv(path)

    for row in rows:
        if columns is not None:
            assert list(row.keys()) == list(columns)

        for name, value in row.items():
            if value == '':
                continue
            assert math.isfinite(float(value)), f'{name}={value} is not finite'

    return rows

import csv
import json
import threading

from .formatters import format_float
from .json import dumps
from .spectral import apply_power

SNAPSHOT_COLUMNS = ['x', 'u', 'rho', 'm']


def _format_cell(value):
    if isinstance(value, str):
        return value

    return format_float(value)


def write_csv(path, headers, details):
    with open(path, 'w', newline='', encoding='utf-8') as f:
        writer = csv.DictWriter(f, fieldnames=list(headers), lineterminator='\n')

        writer.writeheader()

        for d in details:
            writer.writerow({h: _format_cell(d.get(h)) for h in headers})


def snapshot_rows(st, p):
    U = st.U
    m = apply_power(U.u, p.s)

    for x, u, rho, m_j in zip(U.grid.points, U.u.samples, U.rho.samples, m.samples):
        yield {'x': x, 'u': u, 'rho': rho, 'm': m_j}


def write_json(path, document):
    with open(path, 'w', encoding='utf-8') as f:
        f.write(dumps(document))


class JsonLinesWriter:
    """ Appends one JSON document per line; writes from several threads are serialized. """

    def __init__(self, path):
        self.path = path
        self._lock = threading.Lock()

        with open(self.path, 'w', encoding='utf-8'):
            pass

    def write(self, record):
        line = json.dumps(record, allow_nan=False, separators=(',', ':'))

        with self._lock:
            with open(self.path, 'a', encoding='utf-8') as f:
                f.write(line + '\n')

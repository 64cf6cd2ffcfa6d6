import json
import jsonschema

from .exceptions import ConfigurationError

NUMBER = {"type": "number"}
INTEGER = {"type": "integer"}


def _object(properties, **kwargs):
    return {"type": "object", "properties": properties, "additionalProperties": False, **kwargs}


COEFFICIENT_LIST = {
    "type": "array",
    "items": {"type": "array", "items": NUMBER, "minItems": 3, "maxItems": 3},
}

SIMULATION_SCHEMA = _object({
    "preset": {"type": "string"},
    "grid": _object({"n": INTEGER}),
    "model": _object({
        "a": NUMBER,
        "s": NUMBER,
        "kappa": NUMBER,
        "alpha": NUMBER,
        "formulation": {"enum": ["direct", "geodesic"]},
    }),
    "stepper": _object({"dt": NUMBER, "t_end": NUMBER, "sample_every": INTEGER}),
    "thresholds": _object({"slope_limit": NUMBER, "tail_fraction_limit": NUMBER}),
    "initial": _object({
        "kind": {"enum": ["single_mode", "fourier_list", "gaussian_bump"]},
        "target": {"enum": ["u", "rho", "both"]},
        "amplitude": NUMBER,
        "wavenumber": INTEGER,
        "phase": NUMBER,
        "center": NUMBER,
        "width": NUMBER,
        "u_coefficients": COEFFICIENT_LIST,
        "rho_coefficients": COEFFICIENT_LIST,
        "u_offset": NUMBER,
        "rho_offset": NUMBER,
    }),
    "flow_map": {"type": "boolean"},
    "output": _object({"directory": {"type": "string"}, "snapshot_every": {"type": "integer", "minimum": 0}}),
    "tolerances": _object({
        "metric_drift": NUMBER,
        "mean_drift": NUMBER,
        "lagrangian": NUMBER,
        "stretch_slack": NUMBER,
        "apriori": NUMBER,
    }),
    "sweep": _object({
        "s": {"type": "array", "items": NUMBER},
        "a": {"type": "array", "items": NUMBER},
        "kappa": {"type": "array", "items": NUMBER},
        "alpha": {"type": "array", "items": NUMBER},
    }),
})


def _error_path(error):
    return '.'.join(str(p) for p in error.absolute_path) or '(document)'


def validate_document(document, schema=SIMULATION_SCHEMA):
    """ Raise ConfigurationError carrying every schema violation, one per line. """
    validator = jsonschema.Draft7Validator(schema)
    errors = sorted(validator.iter_errors(document), key=lambda e: list(map(str, e.absolute_path)))

    if errors:
        raise ConfigurationError('\n'.join(f'{_error_path(e)}: {e.message}' for e in errors))


def load_document(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigurationError(f'config is not valid JSON: {e}') from e


def dumps(document):
    """ Deterministic JSON text; floats use the shortest round-trip representation. """
    return json.dumps(document, indent=2, allow_nan=False) + '\n'

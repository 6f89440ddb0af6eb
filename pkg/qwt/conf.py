"""Library settings, read from ``settings.QWT`` with built-in fallbacks."""

from django.conf import settings
from django.core.exceptions import ImproperlyConfigured

DEFAULTS = {
    "VALIDATION_TOL": 1e-10,
    "RECONSTRUCTION_TOL": 1e-10,
    "FACTORIZATION_TOL": 1e-8,
    "UNITARY_TOL": 1e-12,
    "FIDELITY_TOL": 1e-10,
    "LEVEL_TOL": 1e-9,
    "MCX_STRATEGY": "I",
    "REGISTRY_PATH": "",
    "MAX_REFERENCE_QUBITS": 12,
    "MAX_UNITARY_QUBITS": 12,
    "RANDOM_SEED": 1234,
    "RANDOM_STATES": 100,
}


def qwt_setting(name):
    if name not in DEFAULTS:
        raise KeyError(f"Unknown QWT setting '{name}'")
    try:
        overrides = getattr(settings, "QWT", {}) or {}
    except ImproperlyConfigured:
        # Library used outside a configured Django project.
        overrides = {}
    return overrides.get(name, DEFAULTS[name])

"""
Access to the SDOF_LAB settings block.

Falls back to the built-in defaults when Django settings are not configured,
so the domain modules can be imported and used as a plain library.
"""
from django.conf import settings

DEFAULTS = {
    "EPS_GAIN": 1e-3,
    "REJECTION_CAP": 10 ** 4,
    "NOISE_VAR": 1.0,
    "RTOL": 1e-9,
    "GRID_GUARD": 10 ** 6,
    "SUBSET_GUARD": 10 ** 7,
    "LEAKAGE_Q_CAP": 10 ** 6,
    "ALPHA_RANGE": (0.5, 2.0),
}


def get(name):
    if name not in DEFAULTS:
        raise KeyError("Unknown sdof_lab setting: {}".format(name))
    if settings.configured:
        return getattr(settings, "SDOF_LAB", {}).get(name, DEFAULTS[name])
    return DEFAULTS[name]


def resolve(name, value):
    """Return `value` unless it is None, in which case the configured setting."""
    return get(name) if value is None else value

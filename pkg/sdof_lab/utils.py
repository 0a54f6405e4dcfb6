"""
Utilities for parsing command-line values, formatting rationals and
stamping outputs with provenance.
"""
import hashlib
import json
import math
from fractions import Fraction

from sdof_lab import __version__
from sdof_lab.exceptions import DomainError


def parse_p_range(text):
    """
    Parse a power list. Accepts the geometric form 'start..stop:xfactor'
    or a plain comma-separated list. '1e4..1e12:x100' -> [1e4, 1e6, ..., 1e12].
    """
    if not text or not text.strip():
        raise DomainError("Empty power list")
    if ".." not in text:
        return parse_float_list(text)
    try:
        start, rest = text.split("..", 1)
        stop, factor = rest.split(":x", 1)
        start, stop, factor = float(start), float(stop), float(factor)
    except ValueError:
        raise DomainError("Bad power range {!r}, expected start..stop:xfactor".format(text))
    if start <= 0 or stop < start or factor <= 1:
        raise DomainError("Power range needs 0 < start <= stop and factor > 1")
    count = int(math.floor(math.log(stop / start, factor) + 1e-9)) + 1
    return [start * factor ** i for i in range(count)]


def parse_float_list(text):
    try:
        return [float(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise DomainError("Expected comma-separated numbers, got {!r}".format(text))


def parse_int_list(text):
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise DomainError("Expected comma-separated integers, got {!r}".format(text))


def parse_rational(text):
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise DomainError("Not a rational number: {!r}".format(text))


def parse_rational_vector(text):
    """'3/5,3/5,0,0' -> (Fraction(3, 5), Fraction(3, 5), Fraction(0), Fraction(0))."""
    parts = [p for p in text.split(",") if p.strip()]
    if not parts:
        raise DomainError("Empty point")
    return tuple(parse_rational(p) for p in parts)


def format_rational(value):
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return "{}/{}".format(value.numerator, value.denominator)


def format_point(point):
    return "({})".format(", ".join(format_rational(c) for c in point))


def config_hash(params):
    """Short stable digest of a flat parameter mapping."""
    blob = json.dumps(params, sort_keys=True, default=str).encode()
    return hashlib.sha256(blob).hexdigest()[:12]


def provenance_header(command, seed, params):
    return "# sdof-lab {} command={} seed={} config={}".format(
        __version__, command, seed, config_hash(params)
    )


def load_config_file(path):
    """Read a flat JSON object of option values; keys may use dashes or underscores."""
    try:
        with open(path, "r") as f:
            data = json.load(f)
    except (OSError, ValueError) as e:
        raise DomainError("Cannot read config file {}: {}".format(path, e))
    if not isinstance(data, dict):
        raise DomainError("Config file {} must hold a JSON object".format(path))
    flat = {}
    for key, value in data.items():
        if isinstance(value, (dict, list)):
            raise DomainError("Config key {!r} must map to a scalar".format(key))
        flat[key.replace("-", "_")] = value
    return flat

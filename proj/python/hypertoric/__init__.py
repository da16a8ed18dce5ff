"""Python access to the htk core.

Specs are plain dicts with the same fields as the JSON spec files:
``{"rho": [[1], [1], [1]], "lambda": [1], "p": 5, "options": {...}}``.
"""

import json

from . import _htk
from ._htk import HtkError

__all__ = [
    "HtkError",
    "adjacency",
    "analyze",
    "bases_count",
    "chamber_classes",
    "commands",
    "corpus",
    "ext_dims",
    "h_vector",
    "hom_dims",
    "is_smooth",
    "oracle_dims",
    "render",
    "run",
]


def _spec(spec):
    return spec if isinstance(spec, str) else json.dumps(spec)


def commands():
    return list(_htk.commands())


def run(command, spec, timings=False):
    """Report of one CLI command as a dict (same content as ``htk <command>``)."""
    text, _, _ = _htk.run(command, _spec(spec), "json", timings)
    return json.loads(text)


def analyze(spec):
    return run("analyze", spec)


def render(spec, format="svg"):
    """SVG or ASCII picture of a two-dimensional coset."""
    if format not in ("svg", "ascii"):
        raise ValueError("format must be 'svg' or 'ascii'")
    return _htk.run("render", _spec(spec), format, False)[1]


def corpus(seed, count, **bounds):
    return json.loads(_htk.corpus(seed, count, **bounds))


def chamber_classes(spec):
    return [tuple(k) for k in _htk.chamber_classes(_spec(spec))]


def adjacency(spec):
    return _htk.adjacency(_spec(spec))


def is_smooth(spec):
    return _htk.is_smooth(_spec(spec))


def bases_count(spec):
    return _htk.bases_count(_spec(spec))


def hom_dims(spec, truncation):
    return _htk.hom_dims(_spec(spec), truncation)


def ext_dims(spec, truncation):
    return _htk.ext_dims(_spec(spec), truncation)


def oracle_dims(spec, truncation, dual=False):
    return _htk.oracle_dims(_spec(spec), dual, truncation)


def h_vector(spec, x, y=None):
    return _htk.h_vector(_spec(spec), list(x), None if y is None else list(y))

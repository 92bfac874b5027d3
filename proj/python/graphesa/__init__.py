"""Essential self-adjointness of weighted graph Laplacians and Schrodinger operators."""

import json
import os

from . import _core
from ._core import GraphesaError, dense_operator as _dense_operator, lower_threshold, upper_threshold

__version__ = _core.__version__

__all__ = [
    "GraphesaError",
    "boundary_distances",
    "classify",
    "dense_operator",
    "example",
    "load",
    "lower_threshold",
    "run",
    "upper_threshold",
    "weyl",
    "witness",
]


def _text(family):
    if isinstance(family, str):
        return family
    return json.dumps(family)


def _params(params):
    return {k: float(v) for k, v in (params or {}).items()}


def example(name, **params):
    return json.loads(_core.example_json(name, _params(params)))


def load(path):
    with open(os.fspath(path)) as fh:
        return json.load(fh)


def classify(family, params=None, disable=()):
    return json.loads(_core.classify_json(_text(family), _params(params), list(disable)))


def weyl(family, params=None, lambda_=1j):
    return json.loads(_core.weyl_json(_text(family), _params(params), complex(lambda_)))


def witness(family, params=None, horizons=(50, 100, 200, 400), boundary=1.0):
    return json.loads(_core.witness_json(_text(family), _params(params), list(horizons), boundary))


def boundary_distances(family, params=None, horizon=20):
    return _core.boundary_distances(_text(family), _params(params), horizon)


def dense_operator(family, params=None, horizon=20):
    return _dense_operator(_text(family), _params(params), horizon)


def run(*args):
    """Run a CLI command; returns (exit_code, stdout, stderr)."""
    return _core.run([str(a) for a in args])

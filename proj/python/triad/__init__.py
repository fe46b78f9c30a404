"""Three-stage chemostat analysis.

Configs are plain dicts with the same schema as the JSON files read by the
``triad`` command-line tool.
"""

import json

from . import _core
from ._core import ConfigError, GrowthCurve, ParameterError, StiffnessError, lambda1, lambda2_pair

__all__ = [
    "ConfigError",
    "GrowthCurve",
    "ParameterError",
    "StiffnessError",
    "classify_point",
    "equilibria",
    "lambda1",
    "lambda2_pair",
    "normalize",
    "simulate",
    "validate",
]


def _dump(config):
    return config if isinstance(config, str) else json.dumps(config)


def normalize(config):
    """Parse, validate and re-serialize a config with defaults filled in."""
    return json.loads(_core.normalize_config(_dump(config)))


def equilibria(config):
    """Full equilibrium report (same content as ``triad equilibria``)."""
    return json.loads(_core.equilibria_report(_dump(config)))


def classify_point(config):
    """(signature, N) for one parameter point; N is None with first-order hydrolysis."""
    return _core.classify_point(_dump(config))


def simulate(config, initial=None, t_end=None):
    """Integrate; returns a dict with t, states, Z, terminal and monitor info."""
    return _core.simulate(_dump(config), initial, t_end)


def validate(draws=500, seed=1):
    """Randomized analytic vs numeric stability cross-check summary."""
    return json.loads(_core.validate(draws, seed))

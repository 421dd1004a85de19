"""Python front end for the mvdl workbench.

Results come back from the extension as JSON text and are decoded here.
Errors raise ``MvdlError`` (a ``ValueError``) whose message starts with the
error code, e.g. ``syntax-error: ...``.
"""

import json

from . import _core
from ._core import MvdlError, __version__

__all__ = [
    "MvdlError",
    "__version__",
    "validate_algebra",
    "is_semiprimal",
    "evaluate",
    "reduce",
    "rules",
    "verify_rules",
    "entail",
    "replay_counterexample",
]


def validate_algebra(algebra="B2"):
    """FLew law report for a built-in name or a JSON algebra file."""
    return json.loads(_core.validate_algebra(algebra))


def is_semiprimal(algebra):
    return _core.is_semiprimal(algebra)


def evaluate(model, formula):
    """Truth value labels of ``formula`` at every state of ``model`` (a dict)."""
    return json.loads(_core.evaluate(json.dumps(model), formula))


def reduce(formula, preset, algebra="L2", max_k=2):
    return _core.reduce(formula, preset, algebra, max_k)


def rules(preset, algebra="L2", max_k=2):
    return json.loads(_core.rules(preset, algebra, max_k))


def verify_rules(preset, algebra="L2", max_k=2, max_n=2, mode="exhaustive", trials=10000, seed=None):
    seed = _default_seed() if seed is None else seed
    return json.loads(_core.verify_rules(preset, algebra, max_k, max_n, mode, trials, seed))


def entail(gamma, phi, preset, algebra="B2", max_n=2, mode="exhaustive", trials=10000, seed=None):
    seed = _default_seed() if seed is None else seed
    return json.loads(_core.entail(list(gamma), phi, preset, algebra, max_n, mode, trials, seed))


def replay_counterexample(counterexample):
    return _core.replay_counterexample(json.dumps(counterexample))


def _default_seed():
    return 0xC0A1

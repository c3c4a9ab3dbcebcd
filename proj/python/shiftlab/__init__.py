"""Thermodynamic formalism for countable-state Markov shifts.

Every document argument is a dict in the shiftlab JSON schema or a path to
such a file. Each function returns the JSON report as a dict; the key
``"ok"`` is False when a verification ran and failed.
"""

import json
import os

from . import _shiftlab
from ._shiftlab import ConvergenceError, InputError, NotIrreducible, SchemaError

__all__ = [
    "ConvergenceError",
    "InputError",
    "NotIrreducible",
    "SchemaError",
    "classify",
    "entropy",
    "equilibrium",
    "induce",
    "partition_function",
    "pressure",
    "run",
    "transport",
    "verify_correspondence",
    "verify_magic",
    "zeta",
]


def _doc(value):
    if value is None:
        return None
    if isinstance(value, (str, os.PathLike)):
        return json.dumps(os.path.abspath(os.fspath(value)))
    return json.dumps(value)


def _report(pair):
    text, ok = pair
    out = json.loads(text)
    out["ok"] = ok
    return out


def entropy(shift):
    return _report(_shiftlab.entropy(_doc(shift)))


def pressure(shift, potential=None, method="spectral", n_max=12, word="", threads=1):
    return _report(_shiftlab.pressure(_doc(shift), _doc(potential), method, n_max, word, threads))


def partition_function(shift, n_max, potential=None, word="", pressure=None, threads=1):
    """Z_n for n = 1..n_max; the report carries a "csv" rendering as well."""
    text, ok, csv = _shiftlab.partition_function(_doc(shift), _doc(potential), n_max, word, pressure, threads)
    out = _report((text, ok))
    out["csv"] = csv
    return out


def classify(shift, potential=None, word="", word2="", maxlen=10):
    return _report(_shiftlab.classify(_doc(shift), _doc(potential), word, word2, maxlen))


def zeta(shift, order):
    return _report(_shiftlab.zeta(_doc(shift), order))


def equilibrium(shift, potential=None):
    return _report(_shiftlab.equilibrium(_doc(shift), _doc(potential)))


def induce(shift, word, potential=None, word2="", maxlen=10, n_max=0, from_words=False):
    return _report(_shiftlab.induce(_doc(shift), _doc(potential), word, word2, maxlen, n_max, from_words))


def verify_magic(code, word, offset=0, depth=8):
    return _report(_shiftlab.verify_magic(_doc(code), word, offset, depth))


def transport(ai, seed=None, measure=None, potential=None, order=2, samples=100000, sample=False):
    return _report(_shiftlab.transport(_doc(ai), _doc(measure), _doc(potential), order, seed, samples, sample))


def verify_correspondence(ai, potential=None, potential_t=None, pushforward=False, n_max=10, order=2,
                          seed=None, samples=100000, sample=False):
    return _report(_shiftlab.verify_correspondence(_doc(ai), _doc(potential), _doc(potential_t), pushforward,
                                                   n_max, order, seed, samples, sample))


def run(args):
    """Run the command-line interface in-process; returns (status, stdout, stderr)."""
    return _shiftlab.run([str(a) for a in args])

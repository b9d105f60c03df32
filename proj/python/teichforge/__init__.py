"""Arithmetic Veech groups from finite index subgroups of Gamma(2).

JSON documents are passed and returned as plain dicts.
"""

import json

from . import _core
from ._core import CERTIFICATE_VERSION, InputError, PipelineError

__all__ = [
    "CERTIFICATE_VERSION",
    "InputError",
    "PipelineError",
    "atlas",
    "construct",
    "decompose",
    "gamma2_word",
    "index2_delta",
    "run_suite",
    "sl2_word",
    "stabilizer",
    "suite_names",
    "veech_of_origami",
    "verify",
]


def _enc(doc):
    return doc if isinstance(doc, str) else json.dumps(doc)


def _mat(m):
    return [str(x) for x in m]


def construct(delta, seed=1, budget=10000, toy_primes=None, refine=True):
    return json.loads(_core.construct(_enc(delta), seed, budget, toy_primes, refine))


def verify(cert, delta):
    return json.loads(_core.verify(_enc(cert), _enc(delta)))


def stabilizer(cert):
    return json.loads(_core.stabilizer(_enc(cert)))


def veech_of_origami(text):
    return json.loads(_core.veech_of_origami(text))


def gamma2_word(matrix):
    """Word in G1, G2 and a sign with matrix == sign * word."""
    return _core.gamma2_word(_mat(matrix))


def sl2_word(matrix):
    return _core.sl2_word(_mat(matrix))


def decompose(table, word):
    return json.loads(_core.decompose(_enc(table), word))


def atlas():
    return json.loads(_core.atlas())


def suite_names():
    return list(_core.suite_names())


def run_suite(name, samples=12, words=25, seed=1, budget=10000):
    return json.loads(_core.run_suite(name, samples, words, seed, budget))


def index2_delta():
    return json.loads(_core.index2_delta())

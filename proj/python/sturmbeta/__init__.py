"""Sturmian words, beta-expansions of 1 and certified digit statistics.

Real numbers come back as {"mid": str, "rad": str} balls; use ``ball_float``
for a quick float.
"""

import json

from . import _core
from ._core import Error

__all__ = [
    "Error",
    "ball_float",
    "classify",
    "frequency_report",
    "identity_check",
    "mahler_f",
    "orbit_csv",
    "solve",
    "sturmian_beta",
    "word",
]

word = _core.word
orbit_csv = _core.orbit_csv


def ball_float(ball):
    return float(ball["mid"])


def solve(dbeta1, bits=128, depth=1000):
    return json.loads(_core.solve_json(dbeta1, bits, depth))


def sturmian_beta(slope, a, b, bits=128):
    return json.loads(_core.sturmian_json(slope, a, b, bits))


def classify(beta, depth=1000):
    return json.loads(_core.classify_json(beta, depth))


def frequency_report(slope, a, b, bits=128, birkhoff_points=0, seed=20260101, birkhoff_length=100000):
    return json.loads(_core.frequency_json(slope, a, b, bits, birkhoff_points, seed, birkhoff_length))


def identity_check(slope, a, b, bits=512):
    return json.loads(_core.identity_json(slope, a, b, bits))


def mahler_f(slope, z, bits=128):
    return json.loads(_core.mahler_f(slope, str(z), bits))

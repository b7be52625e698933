"""Permutation-rescaling classification of noncommutative domain algebras.

Symbols are passed as text (``"X1 + X2 + 3 X1*X2"``) or JSON strings.
"""

import json

from . import _ncdomain
from ._ncdomain import (
    InternalError,
    InvalidInput,
    dual_map_apply,
    matrix_membership,
    shift_membership,
    shift_norm,
    support_partition,
    to_text,
)

__all__ = [
    "InternalError",
    "InvalidInput",
    "canonical_form",
    "cartan_forced_zeros",
    "decide_equivalence",
    "decide_spherical",
    "dual_map_apply",
    "matrix_membership",
    "normalize",
    "parse_symbol",
    "refute_product",
    "refute_thullen",
    "run_cli",
    "shift_membership",
    "shift_norm",
    "support_partition",
    "to_text",
    "validate",
    "weights",
]


def parse_symbol(text, n=None):
    return json.loads(_ncdomain.parse_symbol(text, n))


def validate(symbol):
    return json.loads(_ncdomain.validate(symbol))


def normalize(symbol):
    return json.loads(_ncdomain.normalize(symbol))


def canonical_form(symbol):
    return json.loads(_ncdomain.canonical_form(symbol))


def decide_equivalence(f, g):
    return json.loads(_ncdomain.decide_equivalence(f, g))


def decide_spherical(symbol, tol=1e-9):
    return json.loads(_ncdomain.decide_spherical(symbol, tol))


def weights(symbol, max_len=5):
    return json.loads(_ncdomain.weights(symbol, max_len))


def refute_product(symbol, block):
    return json.loads(_ncdomain.refute_product(symbol, list(block)))


def refute_thullen(symbol, tol=1e-9):
    return json.loads(_ncdomain.refute_thullen(symbol, tol))


def cartan_forced_zeros(free_map, levels, seed=0):
    if not isinstance(free_map, str):
        free_map = json.dumps(free_map)
    return json.loads(_ncdomain.cartan_forced_zeros(free_map, levels, seed))


def run_cli(*args):
    """Returns (exit_code, decoded JSON payload or help text)."""
    code, out = _ncdomain.run_cli([str(a) for a in args])
    try:
        return code, json.loads(out)
    except json.JSONDecodeError:
        return code, out

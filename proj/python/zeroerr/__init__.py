"""Zero-error information theory on probabilistic graphs.

Graphs are dicts ``{"n": int, "edges": [[u, v], ...], "dist": ...}`` and
channels ``{"x_count", "y_count", "support"}``, the same JSON formats the
``zeroerr`` command line tool reads. Bound intervals come back as
``{"quantity", "lo", "hi", "lo_cert", "hi_cert"}``.
"""

import json

from . import _core
from ._core import BudgetError, Error, sum_channel_weights

__all__ = [
    "BudgetError", "Error", "catalog", "and_product", "and_power", "complement", "disjoint_union",
    "is_perfect", "alpha", "omega", "chromatic_number", "min_entropy_coloring", "korner_entropy",
    "sum_channel_weights", "theta_transitive", "c0_bounds", "h0_bounds", "hbar_bounds", "c_rel_bounds",
    "eta_bounds", "simulate_si", "channel_code", "verify",
]


def _in(obj):
    return obj if isinstance(obj, str) else json.dumps(obj)


def _call(fn, *args, **kwargs):
    return json.loads(fn(*args, **kwargs))


def catalog(name, *params):
    return _call(_core.catalog, name, list(params))


def and_product(a, b):
    return _call(_core.and_product, _in(a), _in(b))


def and_power(g, n):
    return _call(_core.and_power, _in(g), n)


def complement(g):
    return _call(_core.complement, _in(g))


def disjoint_union(parts, weights=None):
    weights = weights if weights is not None else [1.0] * len(parts)
    return _call(_core.disjoint_union, [_in(p) for p in parts], list(weights))


def is_perfect(g):
    return _call(_core.is_perfect, _in(g))


def alpha(g, node_budget=10_000_000):
    return _call(_core.alpha, _in(g), node_budget)


def omega(g):
    return _call(_core.omega, _in(g))


def chromatic_number(g):
    return _call(_core.chromatic_number, _in(g))


def min_entropy_coloring(g):
    return _call(_core.min_entropy_coloring, _in(g))


def korner_entropy(g):
    return _call(_core.korner_entropy, _in(g))


def theta_transitive(g):
    return _core.theta_transitive(_in(g))


def c0_bounds(g, max_n=2, node_budget=10_000_000):
    return _call(_core.c0_bounds, _in(g), max_n, node_budget)


def h0_bounds(g, max_n=2, node_budget=10_000_000):
    return _call(_core.h0_bounds, _in(g), max_n, node_budget)


def hbar_bounds(g, max_n=2, node_budget=10_000_000):
    return _call(_core.hbar_bounds, _in(g), max_n, node_budget)


def c_rel_bounds(g, max_n=2, node_budget=10_000_000):
    return _call(_core.c_rel_bounds, _in(g), max_n, node_budget)


def eta_bounds(parts, numerators, denominator, max_n=1):
    return _call(_core.eta_bounds, [_in(p) for p in parts], list(numerators), denominator, max_n)


def simulate_si(channel, n, eps, trials, seed=1):
    return _call(_core.simulate_si, _in(channel), n, eps, trials, seed)


def channel_code(channel, n):
    return _call(_core.channel_code, _in(channel), n)


def verify(tags=(), ids=(), seed=20240229, threads=1):
    return _call(_core.verify, list(tags), list(ids), seed, threads)

"""Python access to the permconc core: groups, measures, transport costs and the inequality checker.

Group and measure specs are the same dictionaries the CLI reads from ``--group-file`` and
``--measure-file``.
"""

import json

from . import _core
from ._core import q_tilde, relative_entropy, slice_points, total_variation

__all__ = [
    "Group",
    "group",
    "q_tilde",
    "relative_entropy",
    "slice_points",
    "t2_hat",
    "t2_tilde",
    "total_variation",
    "verify_default_suite",
    "w1",
]


class Group:
    """A finite permutation group with its local base."""

    def __init__(self, spec):
        self.spec = dict(spec)
        self._g = _core.Group(json.dumps(self.spec))

    n = property(lambda self: self._g.n)
    order = property(lambda self: self._g.order)
    ell = property(lambda self: self._g.ell)
    fingerprint = property(lambda self: self._g.fingerprint)
    nontrivial_levels = property(lambda self: self._g.nontrivial_levels)

    def elements(self):
        return self._g.elements()

    def describe(self):
        return json.loads(self._g.describe_json())

    def u_map(self, word):
        return self._g.u_map(list(word))

    def u_inverse(self, perm):
        return self._g.u_inverse(list(perm))

    def index_of(self, perm):
        return self._g.index_of(list(perm))

    def distances(self, metric="hamming"):
        return self._g.distances(metric)

    def measure(self, spec=None):
        return self._g.measure(json.dumps(spec or {"kind": "uniform"}))

    def sample(self, count, seed, spec=None, threads=1):
        return self._g.sample(json.dumps(spec or {"kind": "uniform"}), seed, count, threads)

    def talagrand_f(self, sigma, subset):
        """(value, vertex optimality) of f(sigma, A) for element ordinals."""
        return self._g.talagrand_f(sigma, list(subset))

    def q_paren(self, phi, sigma, c):
        """(value, certified gap)."""
        return self._g.q_paren(list(phi), sigma, c)

    def t2_paren(self, nu1, nu2, with_coupling=False):
        return json.loads(self._g.t2_paren(list(nu1), list(nu2), with_coupling))

    def verify(self, seed, measure=None, pairs=500, threads=1, max_trials=5):
        text = self._g.verify(json.dumps(measure or {"kind": "uniform"}), seed, pairs, threads, max_trials)
        return json.loads(text)


def group(kind, n=None, blocks=None, generators=None, ell=None):
    spec = {"kind": kind}
    if n is not None:
        spec["n"] = n
    if blocks is not None:
        spec["blocks"] = list(blocks)
    if generators is not None:
        spec["generators"] = [list(g) for g in generators]
    if ell is not None:
        spec["ell"] = ell
    return Group(spec)


def w1(nu1, nu2, distances, with_coupling=False):
    return json.loads(_core.w1(list(nu1), list(nu2), distances, with_coupling))


def t2_tilde(nu1, nu2, distances, with_coupling=False):
    return json.loads(_core.t2_tilde(list(nu1), list(nu2), distances, with_coupling))


def t2_hat(nu1, nu2, k, n, with_coupling=False):
    return json.loads(_core.t2_hat(list(nu1), list(nu2), k, n, with_coupling))


def verify_default_suite(seed, pairs=500, threads=1, max_trials=5):
    return json.loads(_core.verify_default_suite(seed, pairs, threads, max_trials))

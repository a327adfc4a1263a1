"""Exact joint replenishment toolkit.

Instances and policies are JSON documents (see the README); exact quantities
come back as :class:`fractions.Fraction`.
"""

import json
from fractions import Fraction

from . import _core
from ._core import JrpError

__all__ = [
    "JrpError",
    "brute_force_sat",
    "cost",
    "optimal_cycle",
    "parse_dimacs",
    "reduce",
    "run_cli",
    "serialize_dimacs",
    "solve",
    "union_rate",
    "verify_roundtrip",
]


def _doc(x):
    return x if isinstance(x, str) else json.dumps(x)


def _fractions(d):
    return {k: Fraction(v) for k, v in d.items()}


def cost(instance, policy, decompose=False):
    """Exact cost breakdown of a policy. Arguments are dicts or JSON strings."""
    fn = _core.decompose if decompose else _core.total_cost
    return _fractions(fn(_doc(instance), _doc(policy)))


def optimal_cycle(k, h, lam):
    """(float t*, Fraction t* or None when irrational)."""
    approx, exact = _core.optimal_cycle(str(Fraction(k)), str(Fraction(h)), str(Fraction(lam)))
    return approx, None if exact is None else Fraction(exact)


def union_rate(periods):
    """Orders per unit time of in-phase series with the given periods."""
    return Fraction(_core.union_rate([str(Fraction(p)) for p in periods]))


def solve(instance, method="exhaustive", k_hi=8, base=1, optimize_base=False):
    r = _core.solve(_doc(instance), method, k_hi, str(Fraction(base)), optimize_base)
    r["policy"] = {k: Fraction(v) for k, v in json.loads(r["policy"])["cycles"].items()}
    r["cost"] = _fractions(r["cost"])
    return r


parse_dimacs = _core.parse_dimacs
serialize_dimacs = _core.serialize_dimacs
brute_force_sat = _core.brute_force_sat


def reduce(dimacs, prime_start=41, constants="pair-product"):
    """Instance dict of the reduction of a 3SAT formula given as DIMACS text."""
    return json.loads(_core.reduce(dimacs, prime_start, constants))


def verify_roundtrip(dimacs, prime_start=41):
    r = _core.verify_roundtrip(dimacs, prime_start)
    r["min_cost"] = Fraction(r["min_cost"])
    return r


def run_cli(*args):
    """Runs the command line front end in-process: (exit code, stdout, stderr)."""
    return _core.run_cli([str(a) for a in args])

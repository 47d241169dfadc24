"""Competitive equilibria for an autonomous carpooling market."""

import json as _json

from ._carpool import inspect_json, oracle_json, solve_json, verify_json

__all__ = ["solve", "verify", "inspect", "oracle"]


def solve(instance, vcg=False, max_routes=10000):
    """Solve an instance (dict) and return the result document as a dict."""
    return _json.loads(solve_json(_json.dumps(instance), vcg, max_routes))


def verify(instance, outcome, max_routes=10000):
    """Check every equilibrium property of an outcome document."""
    return _json.loads(
        verify_json(_json.dumps(instance), _json.dumps(outcome), max_routes)
    )


def inspect(instance, max_routes=10000):
    """Routes, series-parallel verdict, greedy capacities, max flow."""
    return _json.loads(inspect_json(_json.dumps(instance), max_routes))


def oracle(instance, max_routes=10000):
    """Brute-force LP/IP optima (small instances only)."""
    return _json.loads(oracle_json(_json.dumps(instance), max_routes))

"""Torus-quotient data and Kaehler-Einstein certificates for symmetric
T-varieties.

Structured results come out of the extension module as JSON strings; the
helpers here decode them into plain dicts/lists.
"""

import json as _json

from chowquot._core import (  # noqa: F401
    analyze_verdict,
    glct_bound,
    glct_bound_via_search,
    moment_map,
    quotient_space_report,
    smith_normal_form,
    stratum_stabilizer_order,
)
from chowquot import _core as _c

__all__ = [
    "analyze_verdict",
    "boundary_from_stabilizers",
    "certify",
    "chow_boundary",
    "convex_hull",
    "degenerate",
    "fibre_probe",
    "glct_bound",
    "glct_bound_via_search",
    "is_lc_concurrent",
    "kn_solve",
    "moment_map",
    "moment_polytope",
    "quotient_space_report",
    "smith_normal_form",
    "stratum_stabilizer_order",
]


def certify(family):
    """Full Kaehler-Einstein certificate for a family selector."""
    return _json.loads(_c.certify_json(family))


def chow_boundary(family):
    return _json.loads(_c.chow_boundary_json(family))


def boundary_from_stabilizers(family):
    return _json.loads(_c.boundary_from_stabilizers_json(family))


def moment_polytope(family):
    return _json.loads(_c.moment_polytope_json(family))


def convex_hull(points):
    """Exact hull of rational points given as lists of 'p/q' strings."""
    return _json.loads(_c.convex_hull_json(points))


def kn_solve(family, u, seed=0, tol=1e-9, max_iter=500):
    return _json.loads(_c.kn_solve_json(family, u, seed, tol, max_iter))


def fibre_probe(family, u, trials=30, seed=0, tol=1e-9):
    return _json.loads(_c.fibre_probe_json(family, u, trials, seed, tol))


def degenerate(divisor, weights):
    """Flat limit of a plane divisor under a one-parameter subgroup.

    `divisor` is a list of {"poly": ..., "coeff": "p/q"} entries; `weights`
    the three subgroup weights.
    """
    return _json.loads(_c.degenerate_json(_json.dumps(divisor), list(weights)))


def is_lc_concurrent(divisor, point):
    """Concurrent-lines log-canonicity test at a rational point."""
    return _c.is_lc_concurrent(_json.dumps(divisor), [str(x) for x in point])

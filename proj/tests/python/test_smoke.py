"""Smoke tests for the python bindings (and a CLI determinism check)."""

import json
import os
import subprocess

import chowquot


def test_certify_headline_families():
    cert = chowquot.certify("hypersurface:n=3,alpha=1,beta=2")
    assert cert["verdict"] == "certified"
    assert cert["gamma"] == "1/2"
    assert cert["pair_glct_bound"] == "1/1"
    assert cert["tian_threshold"] == "5/6"
    assert chowquot.certify("blownup-quadric:n=3")["verdict"] == "certified"
    assert chowquot.certify("hypersurface:n=3,alpha=2,beta=2")["verdict"] == "inconclusive"


def test_glct_bound_values():
    assert chowquot.glct_bound("1/2") == "1/1"
    assert chowquot.glct_bound("2/3") == "2/1"
    assert chowquot.glct_bound("3/4") == "inf"
    assert chowquot.glct_bound("0.25") == chowquot.glct_bound_via_search("0.25")


def test_boundary_pair_routes_agree():
    a = chowquot.chow_boundary("hypersurface:n=3,alpha=1,beta=3")
    b = chowquot.boundary_from_stabilizers("hypersurface:n=3,alpha=1,beta=3")
    assert a == b
    assert a["gamma"] == "2/3"


def test_moment_polytope_and_hull():
    poly = chowquot.moment_polytope("hypersurface:n=2,alpha=1,beta=1")
    assert len(poly["vertices"]) == 6  # hexagon
    hull = chowquot.convex_hull([["0/1", "0/1"], ["1/1", "0/1"], ["2/1", "0/1"]])
    assert len(hull["vertices"]) == 2  # collinear midpoint dropped


def test_smith_normal_form_roundtrip():
    u, d, v = chowquot.smith_normal_form([[2, 0], [0, 3]])
    assert d[0][0] == 1 and d[1][1] == 6


def test_kn_solve_converges():
    res = chowquot.kn_solve("hypersurface:n=2,alpha=1,beta=1", ["1/5", "1/7"], seed=3)
    assert res["status"] == "converged"
    assert res["gradient_norm"] <= 1e-9


def test_fibre_probe_vertex():
    rep = chowquot.fibre_probe("hypersurface:n=2,alpha=1,beta=1", ["1/1", "0/1"],
                               trials=15, seed=1)
    assert rep["u_location"] == "boundary"
    assert rep["verdict"] == "single orbit"


def test_stabilizer_and_report():
    # Support omitting y_1 on X^5_{1,3}: cyclic of order b = 3.
    support = [0, 1, 2, 3, 4, 6, 7]
    assert chowquot.stratum_stabilizer_order(
        "hypersurface:n=3,alpha=1,beta=3", support) == 3
    assert chowquot.quotient_space_report("hypersurface:n=3,alpha=1,beta=1") == "S² ∗ CP²"
    assert chowquot.quotient_space_report("quadric:n=3") is None


def test_degeneration_and_lc():
    divisor = [{"poly": "x1 + x2 + x3", "coeff": "1/1"}]
    limit = chowquot.degenerate(divisor, [1, 1, 0])
    assert len(limit) == 1
    assert limit[0]["coeff"] == "1/1"
    # The limit is the line x1 + x2 through [0:0:1].
    three_lines = [
        {"poly": "x1", "coeff": "2/3"},
        {"poly": "x2", "coeff": "2/3"},
        {"poly": "x1 + x2", "coeff": "2/3"},
    ]
    assert chowquot.is_lc_concurrent(three_lines, ["0", "0", "1"])
    heavy = [{"poly": "x1", "coeff": "11/10"}]
    assert not chowquot.is_lc_concurrent(heavy, ["0", "0", "1"])


def test_cli_deterministic_output():
    cli = os.environ.get("CHOWQUOT_CLI")
    if not cli:
        return  # CLI path not wired into this environment
    cmd = [cli, "certify", "--family", "hypersurface:n=3,alpha=1,beta=3"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b
    doc = json.loads(a)
    assert doc["verdict"] == "certified"
    assert doc["pair_glct_bound"] == "2/1"

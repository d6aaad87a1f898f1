import json
import math
import os
import subprocess

import pytest

import schwarz_atlas as sa

jsonschema = pytest.importorskip("jsonschema")


def validate(doc):
    jsonschema.Draft202012Validator(sa.schema()).validate(doc)


def test_schema_is_valid():
    s = sa.schema()
    jsonschema.Draft202012Validator.check_schema(s)
    assert s["properties"]["schema_version"]["const"] == sa.SCHEMA_VERSION


def test_rationals():
    assert sa.normalize_rational("6/4") == "3/2"
    assert sa.normalize_rational("3") == "3/1"
    assert sa.k_from_p(4) == "1/4"
    with pytest.raises(ValueError):
        sa.normalize_rational("1/0")
    with pytest.raises(sa.ValidationError):
        sa.normalize_rational("0.5")


def test_roots():
    c = sa.root_constants("E", 8)
    assert len(c["positive_roots"]) == 120
    assert c["coxeter_number"] == 30
    assert c["theorem_a"] == "30/1"


def test_enumerate_matches_table_up_to_anomalies():
    e = sa.enumerate(3, 100, 13)
    assert sorted(e["rows"]) == [3, 4, 6, 10]
    assert e["rows"][10] == ["A2"]
    assert e["undocumented"] == 0
    assert sorted((p, t, kind) for p, t, kind, _ in e["discrepancies"]) == [
        (3, "A5", "extra"),
        (6, "A5", "missing"),
    ]
    assert sa.corollary_table()[4] == ["A2", "A3", "A5", "D4", "D5", "E6"]


def test_gauss_monodromy():
    g = sa.gauss_monodromy("1/84", "13/84", "1/2")
    assert g["relation_residual"] < 1e-7
    for key in ("m0", "m1", "m_inf"):
        assert g[key]["eigenvalue_residual"] < 1e-6
    with pytest.raises(ValueError):
        sa.gauss_monodromy("1/3", "1/4", "1")


def test_vertex_angles():
    got = sa.vertex_angles("1/2", "1/3", "1/7")
    for a, b in zip(got, (math.pi / 2, math.pi / 3, math.pi / 7)):
        assert abs(a - b) < 1e-4


def test_pullback():
    assert sa.pullback_residual("1/5", "1/7", "1/3", 0.7 + 0.35j) < 1e-8
    assert len(sa.pullback_dictionary("1/5", "1/7", "1/3")) == 3


def test_tessellation():
    assert sa.classify(2, 3, 7) == "hyperbolic"
    assert [sa.tessellate(2, 3, m)["tile_count"] for m in (3, 4, 5)] == [24, 48, 120]
    h = sa.tessellate(2, 3, 7, depth=6)
    assert h["max_vertex_modulus"] < 1.0
    assert h["max_orthogonality_residual"] < 1e-9


def test_torus():
    pts = sa.sample_points("A", 2, 3, seed=5)
    assert len(pts) == 3
    assert all(sa.flatness_residual("A", 2, "1/4", z) < 1e-8 for z in pts)
    assert sa.flatness_residual("A", 2, "1/4", pts[0], a_override="17/20") > 1e-3
    m = sa.mirror_monodromy("A", 2, "1/4", [1, 0])
    assert m["hecke_residual"] < 1e-6
    b = sa.ball_check("A", 2, "1/4")
    assert b["signature"] == (2, 1)
    assert b["all_negative"]


def test_dm_scan():
    s = sa.dm_scan(10, 60)
    assert s["identity_failures"] == 0
    assert s["verdict_disagreements"] == 0
    assert sorted(s["hidden_flagged"]) == [(4, 5), (6, 3), (10, 2)]


@pytest.mark.parametrize(
    "args",
    [
        ["schwarz", "enumerate", "--p-max", "100"],
        ["schwarz", "check", "--type", "E", "--rank", "6", "--p", "4"],
        ["gauss", "monodromy", "--alpha", "1/84", "--beta", "13/84", "--gamma", "1/2"],
        ["triangle", "tessellate", "--k", "2", "--l", "3", "--m", "7", "--depth", "5"],
        ["torus", "flatness", "--type", "D", "--rank", "4", "--k", "3/10", "--seed", "42"],
        ["torus", "form", "--type", "A", "--rank", "2", "--k", "1/4"],
    ],
)
def test_json_reports_validate(args):
    code, doc = sa.run_json(*args)
    assert code == 0
    validate(doc)


def test_exit_codes():
    assert sa.run(["schwarz", "enumerate", "--p-max", "10"])[0] == 0
    assert sa.run(["gauss", "monodromy", "--alpha", "x", "--beta", "1", "--gamma", "1/2"])[0] == 2
    code, _, _ = sa.run(["torus", "flatness", "--type", "E", "--rank", "6", "--k", "1/6", "--a-override", "7"])
    assert code == 1


def test_cli_binary():
    exe = os.environ.get("SCHWARZ_ATLAS_CLI")
    if not exe or not os.path.exists(exe):
        pytest.skip("CLI binary not available")
    p = subprocess.run([exe, "schwarz", "enumerate", "--p-max", "10", "--format", "json"],
                       capture_output=True, text=True, check=False)
    assert p.returncode == 0
    doc = json.loads(p.stdout)
    validate(doc)
    assert p.stdout == sa.run(["schwarz", "enumerate", "--p-max", "10", "--format", "json"])[1]
    bad = subprocess.run([exe, "schwarz", "enumerate", "--nope"], capture_output=True, text=True, check=False)
    assert bad.returncode == 2

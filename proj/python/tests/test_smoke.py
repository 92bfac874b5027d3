import json
import math
import os
import pathlib

import numpy as np
import pytest

import graphesa

DATA = pathlib.Path(os.environ.get("GRAPHESA_DATA", pathlib.Path(__file__).resolve().parents[2] / "data"))


def test_thresholds():
    assert graphesa.upper_threshold() == pytest.approx(5 * math.sqrt(2) / 4 - 1.5, abs=1e-15)
    assert graphesa.lower_threshold() == pytest.approx(-5 * math.sqrt(2) / 4 - 1.5, abs=1e-15)


@pytest.mark.parametrize("A,status", [(-4.0, "ESA"), (0.0, "NotESA"), (1.0, "ESA")])
def test_classify_dyadic(A, status):
    v = graphesa.classify(graphesa.example("example2", A=A))
    assert v["status"] == status
    assert v["rule"] != "None"
    assert not v["conflict"]


def test_classify_file_with_placeholder():
    fam = graphesa.load(DATA / "families" / "example2.json")
    assert graphesa.classify(fam, {"A": 0.0})["rule"] == "WeylNumeric"
    with pytest.raises(graphesa.GraphesaError):
        graphesa.classify(fam)


def test_disable_rule():
    fam = graphesa.example("example1")
    assert graphesa.classify(fam)["rule"] == "ThmNonComplete"
    assert graphesa.classify(fam, disable=["ThmNonComplete"])["rule"] == "WeylNumeric"


def test_weyl_and_witness():
    w = graphesa.weyl(graphesa.example("example2", A=0.0))
    assert w["status"] == "LimitCircle" and w["dimE"] == 2
    rep = graphesa.witness(graphesa.example("example1"), horizons=[100, 200, 400])
    assert rep["stable"] and rep["nonzero"]
    assert rep["rows"][-1]["norm"] > 0.1


def test_boundary_distances_closed_form():
    d = graphesa.boundary_distances(graphesa.example("example1"), horizon=3)
    zeta = 2.6123753486854883
    assert d[0] == pytest.approx(zeta, rel=1e-10)
    assert d[3] == pytest.approx(zeta - 1 - 2**-1.5 - 3**-1.5, rel=1e-9)


def test_dense_operator_matches_definition():
    m = graphesa.dense_operator(graphesa.example("unit"), horizon=3)
    expected = np.array([[1, -1, 0, 0], [-1, 2, -1, 0], [0, -1, 2, -1], [0, 0, -1, 1]], dtype=float)
    np.testing.assert_allclose(m, expected, atol=1e-15)


def test_cli_round_trip():
    code, out, err = graphesa.run("reproduce", "example2", "--A", "0")
    assert code == 0, err
    report = json.loads(out)
    assert report["result"]["status"] == "NotESA"
    assert all(row["agrees"] for row in report["result"]["table"])
    code, out, err = graphesa.run("classify", "--family", "missing.json")
    assert code == 1 and "file not found" in err

import json
import math
import os
import subprocess
from fractions import Fraction

import pytest

import ctlab


def test_theta_at_omega():
    w = complex(-0.5, math.sqrt(3) / 2)
    want = math.gamma(1 / 3) ** 3 / (2 * math.pi**2)
    v = ctlab.theta_K(w)
    assert abs(v - want) < 1e-12


def test_zero_and_nonzero():
    r7 = ctlab.compute_S_D(7, height=50)
    assert Fraction(r7["S_D"]) == 0
    x, y = (Fraction(t) for t in (r7["point"]["x"], r7["point"]["y"]))
    assert x**3 + y**3 == 7
    r5 = ctlab.compute_S_D(5)
    assert Fraction(r5["S_D"]) != 0
    assert r5["verdict"] == "NoRationalSolutions"


def test_T_squared():
    for D in (7, 13, 19, 61):
        r = ctlab.compute_S_D(D)
        t = ctlab.compute_T_D(D)
        c = int(t["coefficient"])
        t2 = c * c * (-3 if t["imaginary"] else 1)
        sigma = r["sigmaD"]
        assert Fraction(r["S_D"]) * (-3) ** (2 + sigma) == t2


def test_validation():
    with pytest.raises(ctlab.CtlabError):
        ctlab.compute_S_D(9)
    assert issubclass(ctlab.CtlabError, ValueError)


def test_point_search():
    assert ctlab.point_search(5, 200) is None
    x, y = ctlab.point_search(13, 10)
    assert Fraction(x) ** 3 + Fraction(y) ** 3 == 13


def test_hecke_matches_counts():
    for D in (1, 7):
        for p in (5, 7, 11, 13, 17, 19, 23):
            if D % p:
                assert ctlab.hecke_ap(p, D) == ctlab.ap_point_count(D, p)


def test_small_helpers():
    assert ctlab.split_prime(7) == (-2, -3)
    assert ctlab.split_prime(5) is None
    assert ctlab.class_group_order(7) == 6
    assert ctlab.conductor(1) == 27


def test_verify_suite():
    res = ctlab.verify("factorization", samples=3)
    assert res and all(r["status"] == "pass" for r in res)
    with pytest.raises(ValueError):
        ctlab.verify("nope")


@pytest.mark.skipif("CTLAB_CLI" not in os.environ, reason="CLI path not provided")
def test_cli_json(tmp_path):
    cli = os.environ["CTLAB_CLI"]
    out = subprocess.run(
        [cli, "--json", "--cache", str(tmp_path / "c.jsonl"), "compute", "13"],
        check=True,
        capture_output=True,
        text=True,
    ).stdout
    j = json.loads(out)
    assert j["S_D"] == "0"
    assert j["verdict"] == "ExpectSolutions(BSD)"
    bad = subprocess.run([cli, "compute", "9"], capture_output=True)
    assert bad.returncode == 2

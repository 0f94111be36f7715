import json
import math

import numpy as np
import pytest

import _secrecy as sec

I1 = np.eye(1)


@pytest.fixture
def scalar_channel():
    return sec.Channel(I1, I1, I1, [[1.0]], [[1.5]], [[2.0]], [[2.0]])


def test_classification(scalar_channel):
    assert scalar_channel.classification == "SADBC"
    assert scalar_channel.aligned
    assert scalar_channel.t == 1


def test_scalar_rates(scalar_channel):
    r1, r2 = sec.gaussian_rates(I1, I1, scalar_channel)
    assert r1 == pytest.approx(0.5 * (math.log2(2.0) - math.log2(1.5)), abs=1e-12)
    assert r2 == pytest.approx(
        0.5 * (math.log2(3.5 / 2.5) - math.log2(4.0 / 3.0)), abs=1e-12
    )
    # Identity permutation reproduces the same pair.
    s = sec.sdpc_rates([1, 2], I1, I1, scalar_channel)
    assert s == pytest.approx([r1, r2], abs=1e-12)


def test_maximize_and_boundary(scalar_channel):
    rep = sec.maximize_weighted_sum(scalar_channel, 1.0, 1.0, restarts=6, seed=1)
    assert rep["objective"] >= rep["R1_bits"]
    assert rep["kkt_residual"] <= 1e-5
    pts = sec.trace_boundary(scalar_channel, mu_grid=5, restarts=4, seed=1)
    assert len(pts) >= 2
    r1s = [p["R1_bits"] for p in pts]
    assert r1s == sorted(r1s)


def test_certify(scalar_channel):
    cert = sec.certify_enhancement(scalar_channel, 2.0, restarts=8, seed=1)
    assert cert["certified"]
    assert cert["alpha"] == pytest.approx(1.0, abs=1e-12)


def test_misome():
    h1 = np.array([1.0])
    h2 = np.array([0.8])
    H3 = np.array([[0.5]])
    r1, r2 = sec.misome_rates(h1, h2, H3, 10.0, 0.5)
    assert r1 == pytest.approx(0.5 * math.log2(6.0 / 2.25), abs=1e-12)
    rect = sec.misome_highsnr(h1, h2, H3)
    assert rect["a"] == pytest.approx(4.0)
    assert rect["b"] == pytest.approx(2.56)
    region = sec.misome_region(h1, h2, H3, 10.0, alpha_grid=21)
    assert all(r[0] >= 0 and r[1] >= 0 for r in region)


def test_config_roundtrip():
    cfg = {
        "command": "region",
        "channel": {
            "H1": [[1.0]],
            "H2": [[1.0]],
            "H3": [[1.0]],
            "N1": [[1.0]],
            "N2": [[1.5]],
            "N3": [[2.0]],
            "constraint": {"kind": "covariance", "S": [[2.0]]},
        },
    }
    once = sec.parse_config_roundtrip(json.dumps(cfg))
    assert sec.parse_config_roundtrip(once) == once
    assert json.loads(once)["command"] == "region"


def test_format_number():
    assert sec.format_number(1.0 / 3.0) == "0.333333333333"

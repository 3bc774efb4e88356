import math

import numpy as np
import pytest

import s4gauss


def test_clifford_fields_and_energy():
    a = s4gauss.analyze(s4gauss.clifford_torus(), n=32)
    f = a.fields()
    assert f["u"].shape == (32, 32)
    assert np.allclose(f["u"], -math.log(2.0))
    assert np.allclose(np.abs(f["xi1"]) ** 2 + np.abs(f["xi2"]) ** 2, 1 / 16)
    e = a.energy()
    assert e["E"] == pytest.approx(4 * math.pi**2, rel=1e-12)
    assert e["W"] == pytest.approx(math.pi, rel=1e-12)
    assert e["genus"] == 1


def test_harmonicity_verdicts():
    torus = s4gauss.pmc_torus(math.sqrt(3) / 2, 0.5)
    assert s4gauss.analyze(torus).harmonicity()["verdict"] == "HARMONIC"
    moved = s4gauss.moebius(s4gauss.clifford_torus(), [0.3, 0, 0, 0, 0])
    h = s4gauss.analyze(moved).harmonicity()
    assert h["verdict"] == "NOT HARMONIC"
    assert h["max_M"] > 1e-2


def test_residuals_and_family():
    a = s4gauss.analyze(s4gauss.pmc_torus(math.sqrt(3) / 2, 0.5), n=32)
    r = a.residuals()
    assert max(r["gauss"], r["codazzi"], r["ricci"]) <= 1e-10
    fam = a.family(1j)
    assert fam["u_dev"] <= 1e-5
    assert fam["path_independence"] <= 1e-10
    assert len(s4gauss.default_lambdas()) == 9


def test_errors_and_config():
    with pytest.raises(s4gauss.Error):
        s4gauss.pmc_torus(0.9, 0.5)
    with pytest.raises(s4gauss.Error, match="line 2"):
        s4gauss.parse_config("[immersion]\nkind=pmc_torus a=0.9 b=0.5\n")
    cfg = s4gauss.parse_config("[immersion] kind=clifford_torus  [grid] nx=64 ny=64")
    assert cfg["nx"] == 64
    ok, checks = s4gauss.verify_config("[immersion] kind=clifford_torus [grid] nx=32 ny=32")
    assert ok
    assert all(c[3] for c in checks)

import math

import numpy as np
import pytest

import geophase as gp


def ohmic(**kw):
    return gp.model(regime="ohmic", chi=0.1, gamma0=0.02, cutoff=20, **kw)


def test_mes_isolated():
    r = gp.geometric_phase(gp.model(lambda0=0.5, theta0="pi/2"))
    assert r["degenerate"]
    assert r["phase_over_pi"] == pytest.approx(0.5)


def test_ohmic_reference_matches_oracle():
    m = ohmic(lambda0=0.2, theta0="pi/5")
    r = gp.geometric_phase(m, oracle=True, steps_per_cycle=1024)
    assert abs(r["phase"] - 0.3563187970101067) < 1e-9
    assert abs(r["phase"] - r["oracle_phase"]) < 5e-5


def test_product_model():
    m = ohmic(theta0="pi/3", q=0.4)
    assert not m.entangled
    assert m.p == pytest.approx(0.75)
    assert abs(gp.geometric_phase(m)["phase"] - 0.892691715010625) < 1e-9


def test_density_and_bloch():
    m = ohmic(lambda0=0.2, theta0="pi/5")
    rho = gp.reduced_density(1.3, m)
    assert rho.shape == (2, 2)
    assert np.allclose(rho, rho.conj().T)
    assert np.trace(rho).real == pytest.approx(1.0)
    x, y, z = gp.bloch(0.0, m)
    assert x == pytest.approx(-0.6 * math.sin(math.pi / 5))
    assert abs(gp.decoherence_factor(0.0, m)) == pytest.approx(0.6)


def test_trajectory_and_series():
    m = ohmic(concurrence=0.8, theta0="pi/5")
    tr = gp.trajectory(m, cycles=2, steps=64)
    assert tr.shape == (129, 5)
    assert np.all(tr[:, 4] <= 1 + 1e-14)
    s = gp.gp_vs_time(m, cycles=3)
    assert s.shape == (3, 3)
    assert s[-1, 0] == pytest.approx(3 * m.period)


def test_sweep():
    a, b, grid = gp.sweep("concurrence:0.1:1:3", "theta0:0.2:pi/2:4", regime="isolated", threads=2)
    assert grid.shape == (3, 4)
    assert a[-1] == 1.0
    assert np.all(np.isfinite(grid))
    # C = 1 is the maximally mixed start, pi/2 everywhere
    assert np.allclose(grid[-1], math.pi / 2)


def test_errors():
    with pytest.raises(ValueError):
        gp.model(lambda0=1.2, theta0=0.3)
    with pytest.raises(ValueError):
        gp.model(lambda0=0.2, concurrence=0.5)
    with pytest.raises(ValueError):
        gp.model(regime="isolated", chi=0.1)


def test_preset(tmp_path):
    assert "fig1" in gp.preset_names()
    paths = gp.run_preset("fig1", out_dir=str(tmp_path), grid=8, steps=64)
    assert len(paths) == 2
    header = open(paths[0]).readline().strip()
    assert header == "concurrence,theta0,phase_over_pi"


def test_numerical_error():
    # maximally mixed at every time: no eigenbasis to transport
    with pytest.raises(gp.NumericalError):
        gp.gp_discretized(gp.model(lambda0=0.5, theta0="pi/2"), steps=128)

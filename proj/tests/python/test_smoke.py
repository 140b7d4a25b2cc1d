import json
import math

import numpy as np
import pytest

import retrodiff as rd


def test_version():
    assert rd.__version__ == "0.1.0"


def test_husimi_coherent_matches_closed_form():
    p0, q0, hbar = 0.5, -0.3, 1.0
    grid = np.linspace(-6.0, 6.0, 61)
    h = rd.husimi_coherent(p0, q0, hbar, [-6.0, 6.0], [-6.0, 6.0], points=61)
    assert h.shape == (61, 61)
    pp, qq = np.meshgrid(grid, grid, indexing="ij")
    exact = np.exp(-((pp - p0) ** 2 + (qq - q0) ** 2) / (2 * hbar)) / (2 * math.pi * hbar)
    assert np.max(np.abs(h - exact)) < 1e-8
    assert h.min() >= 0.0


def test_amplifier_density_is_product_of_normals():
    p, q, t = 0.2, 1.7, 0.4
    mp, mq = math.exp(-t), math.exp(t)
    exact = math.exp(-((p - mp) ** 2 + (q - mq) ** 2) / 2) / (2 * math.pi)
    assert rd.amplifier_density(p, q, t) == pytest.approx(exact, rel=1e-12)


def test_guidance_drift_free_particle_and_conventions():
    assert rd.guidance_drift("free_particle", 0.8, 0.1, 0.3, mass=2.0) == pytest.approx(0.4, abs=1e-14)
    lit = rd.guidance_drift("free_particle", 0.8, 0.1, 0.3, mass=2.0, convention="paper_literal")
    assert lit == pytest.approx(-0.4, abs=1e-14)


def test_simulate_shapes_and_determinism():
    a = rd.simulate(n_traj=64, dt=1e-2, seed=5, threads=1)
    b = rd.simulate(n_traj=64, dt=1e-2, seed=5, threads=2)
    assert a["q"].shape == (64, 101)
    assert a["t"][0] == 0.0 and a["t"][-1] == pytest.approx(1.0)
    assert np.array_equal(a["q"], b["q"]) and np.array_equal(a["p"], b["p"])


def test_forward_guided_free_particle_is_exact():
    out = rd.simulate("free_particle", "forward_guided", n_traj=16, dt=1e-2, mass=2.0, p0=0.7, q0=-0.2)
    q, p, t = out["q"], out["p"], out["t"]
    assert np.max(np.abs(q - (q[:, :1] + p[:, :1] * t / 2.0))) < 1e-12


def test_metrics():
    assert rd.wasserstein1([0.0, 1.0], [1.0, 2.0]) == pytest.approx(1.0)
    assert rd.ks_two_sample([0.0, 1.0], [2.0, 3.0]) == pytest.approx(1.0)
    rng = np.random.default_rng(3)
    assert rd.wasserstein1_to_normal(rng.normal(size=20000).tolist(), 0.0, 1.0) < 0.03


def test_run_scenario_writes_manifest(tmp_path):
    res = rd.run_scenario({"scenario": "free_particle", "mode": "deterministic", "dt": 1e-2, "n_traj": 4, "out_dir": tmp_path})
    manifest = json.loads(open(res["manifest"]).read())
    assert manifest["version"] == "0.1.0"
    assert {o["path"].split("/")[-1] for o in manifest["outputs"]} >= {"trajectories.csv"}
    assert "final" in res["metrics"]


def test_config_errors_raise():
    with pytest.raises(rd.ConfigError, match="bogus"):
        rd.run_scenario({"bogus": 1})
    with pytest.raises(rd.RetrodiffError):
        rd.simulate("free_particle", "retro", n_traj=2, dt=0.1)

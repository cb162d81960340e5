import json
import math
import os
from pathlib import Path

import numpy as np
import pytest

import kho

CONFIG_DIR = Path(os.environ.get("KHO_CONFIG_DIR", Path(__file__).resolve().parents[2] / "configs"))


def test_frft_quarter_turn_is_centered_dft():
    rng = np.random.default_rng(0)
    v = rng.normal(size=256) + 1j * rng.normal(size=256)
    np.testing.assert_allclose(kho.frft(v, math.pi / 2), kho.dft_centered(v), atol=1e-9)
    np.testing.assert_allclose(kho.inverse_dft_centered(kho.dft_centered(v)), v, atol=1e-12)
    assert abs(np.linalg.norm(kho.frft(v, 0.7)) - np.linalg.norm(v)) < 1e-9


def test_coherent_state_and_quarter_turn():
    grid = kho.GridSpec(1024)
    assert grid.spacing ** 2 * 1024 == pytest.approx(2 * math.pi)
    psi = kho.coherent_state(grid, 0.0, math.pi)
    obs = kho.observables(grid, psi)
    assert obs["energy"] == pytest.approx(math.pi ** 2 / 2 + 0.5, abs=1e-8)
    out = kho.floquet_step(grid, psi, kho.SystemParams.resonance(4, 0.0))
    obs = kho.observables(grid, out)
    assert obs["mean_q"] == pytest.approx(math.pi, abs=1e-6)
    assert abs(obs["mean_p"]) < 1e-6


def test_evolve_record_with_ensemble():
    grid = kho.GridSpec(1024)
    params = kho.SystemParams.resonance(5, 1.0)
    psi = kho.coherent_state(grid, 1.0, 0.0)
    rec = kho.evolve_record(grid, psi, params, 10, ensemble_m=100, center=(1.0, 0.0), seed=3)
    assert rec["quantum"].shape == (11,)
    assert rec["classical"].shape == (11,)
    again = kho.ensemble_energy_series((1.0, 0.0), 100, params, 10, seed=3)
    np.testing.assert_array_equal(rec["classical"], again)


def test_floquet_spectrum_unkicked():
    spec = kho.floquet_spectrum(kho.SystemParams.resonance(4, 0.0), 64)
    eps = spec["quasi_energies"]
    targets = np.array([1, 3, -3, -1]) * math.pi / 4
    dist = np.min(np.abs(np.angle(np.exp(1j * (eps[:, None] - targets[None, :])))), axis=1)
    assert dist.max() < 1e-5
    assert spec["eigenvectors"].shape == (64, 64)
    assert np.all(np.diff(spec["mean_energies"]) >= 0)


def test_husimi_peak():
    grid = kho.GridSpec(512)
    psi = kho.coherent_state(grid, 1.0, -1.0)
    axis = np.linspace(-4, 4, 33)
    h = kho.husimi(grid, psi, axis, axis)
    i, j = np.unravel_index(np.argmax(h), h.shape)
    assert axis[i] == pytest.approx(1.0, abs=0.25)
    assert axis[j] == pytest.approx(-1.0, abs=0.25)


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError):
        kho.GridSpec(1000)
    with pytest.raises(kho.PreconditionError):
        grid = kho.GridSpec(256)
        kho.split_step_floquet_step(grid, kho.coherent_state(grid, 0, 0), kho.SystemParams(), 1.0)
    with pytest.raises(kho.ResourceError):
        kho.floquet_spectrum(kho.SystemParams(), 8192)


def test_run_config(tmp_path):
    cfg = tmp_path / "poincare.cfg"
    cfg.write_text(
        "experiment = poincare\nresonance_r = 4\nmu = 2\nn_kicks = 50\n"
        "poincare_orbits = 10\noutput_dir = unused\n"
    )
    assert kho.validate_config(cfg) == "poincare"
    result = kho.run_config(cfg, tmp_path / "out")
    names = sorted(Path(p).name for p in result["files"])
    assert names == ["manifest.json", "poincare.csv"]
    manifest = json.loads((tmp_path / "out" / "manifest.json").read_text())
    assert manifest["experiment"] == "poincare"
    with pytest.raises(kho.ConfigError):
        kho.validate_config(CONFIG_DIR / "does_not_exist.cfg")


def test_repository_config_validates():
    assert kho.validate_config(CONFIG_DIR / "energy_r4_mu0.5_origin.cfg") == "energy"

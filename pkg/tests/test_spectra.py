import numpy as np
import pytest

from fracident.errors import DomainError
from fracident.gl_model import ModelParams
from fracident.spectra import cpe_impedance, default_grid, impedance, impedance_at, sweep_spectrum


@pytest.fixture
def params(circuit_params):
    return circuit_params


def test_ideal_capacitor_limit():
    # alpha = 1 is outside the model's parameter domain, so test the element directly
    z = cpe_impedance(2.0, 1.0, np.array([0.1, 1.0, 10.0]))
    assert np.allclose(np.angle(z), -np.pi / 2, atol=1e-14)
    assert np.allclose(z, 1 / (1j * 2.0 * np.array([0.1, 1.0, 10.0])))


def test_high_frequency_intercept(params):
    pt = impedance_at(params, 1e6)
    assert abs(pt.z - float(params.r_inf)) < 1e-2


@pytest.mark.parametrize("alpha", [0.1, 0.35, 0.5, 0.8, 0.95])
def test_constant_phase(alpha):
    omega = np.logspace(-2, 2, 41)
    phase = np.angle(cpe_impedance(123.0, alpha, omega))
    assert np.max(np.abs(phase + alpha * np.pi / 2)) < 1e-12


def test_real_part_decreases_over_grid(params):
    pts = sweep_spectrum(params, default_grid())
    re = np.array([p.z_re for p in pts])
    assert len(pts) == 200
    assert np.all(np.diff(re) < 0)
    assert np.all(re > float(params.r_inf))
    assert all(p.z_im < 0 for p in pts)


def test_matches_reference_formula(params):
    w = 3.7
    r0, r1, c1, a1, c2, a2 = (float(getattr(params, k)) for k in
                              ("r_inf", "r1", "c1", "alpha1", "c2", "alpha2"))
    ref = r0 + 1 / (1 / r1 + c1 * (1j * w) ** a1) + 1 / (c2 * (1j * w) ** a2)
    assert impedance_at(params, w).z == pytest.approx(ref, rel=1e-14)


def test_sweep_edge_cases(params):
    assert sweep_spectrum(params, []) == []
    (only,) = sweep_spectrum(params, [2.5])
    assert only == impedance_at(params, 2.5)
    with pytest.raises(DomainError):
        sweep_spectrum(params, [1.0, 0.0])
    with pytest.raises(DomainError):
        sweep_spectrum(params, [2.0, 1.0])
    with pytest.raises(DomainError):
        impedance(params, -1.0)


def test_capacitive_quadrant_random_params():
    rng = np.random.default_rng(3)
    grid = default_grid()
    for _ in range(20):
        p = ModelParams(r_inf=rng.uniform(0.01, 0.2), r1=rng.uniform(0.05, 5), c1=rng.uniform(1, 20),
                        alpha1=rng.uniform(0.1, 0.9), c2=rng.uniform(100, 500),
                        alpha2=rng.uniform(0.1, 0.9), ts=5e-4)
        z = impedance(p, grid)
        assert np.all(z.imag < 0)
        assert np.all(z.real > float(p.r_inf))

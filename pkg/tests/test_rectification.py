"""
Test thermal rectification coefficients, sweeps and the R_J reversal
"""
from types import SimpleNamespace

import numpy as np
import pytest

from core.exceptions import DomainError, NoSignChange, ZeroDenominator
from schemas.params import AsymmetryParams
from services import rectification_service
from services.rectification_service import (
    find_rj_zero,
    gammas_from_asymmetry,
    nesb_rectification,
    rectification,
    sweep_gamma,
    sweep_temperature,
)


@pytest.mark.unit
def test_gammas_from_asymmetry():
    """Test Gamma1 = Lambda(1-gamma), Gamma2 = Lambda(1+gamma)"""
    gamma1, gamma2 = gammas_from_asymmetry(AsymmetryParams(lambda_=2.0, gamma=0.25))
    assert gamma1 == pytest.approx(1.5, rel=1e-15)
    assert gamma2 == pytest.approx(2.5, rel=1e-15)


@pytest.mark.unit
def test_no_rectification_in_harmonic_system(rectification_setup):
    """Test that chi = 0 does not rectify"""
    result = rectification(rectification_setup.with_chi(0.0), AsymmetryParams(lambda_=1.0, gamma=0.6))
    assert abs(result.r_i) < 1e-10
    assert abs(result.r_j) < 1e-10


@pytest.mark.unit
def test_no_rectification_with_symmetric_coupling(rectification_setup):
    """Test that gamma = 0 gives exactly zero rectification"""
    result = rectification(rectification_setup, AsymmetryParams(lambda_=1.0, gamma=0.0))
    assert abs(result.r_i) < 1e-10
    assert abs(result.r_j) < 1e-10
    assert result.forward.particle == pytest.approx(result.reference_forward.particle, rel=1e-15)


@pytest.mark.unit
def test_rectification_positive_at_moderate_asymmetry(rectification_setup, asymmetry):
    """Test forward current dominates when the hot bath couples weakly"""
    result = rectification(rectification_setup, asymmetry)
    assert result.r_i > 0.0
    assert result.forward.particle > 0.0
    assert result.backward.particle < 0.0
    assert result.gamma == 0.6
    assert result.chi == 2.0


@pytest.mark.unit
def test_fully_asymmetric_coupling_carries_no_current(rectification_setup):
    """Test gamma = 1 decouples bath 1 and both coefficients vanish"""
    result = rectification(rectification_setup, AsymmetryParams(lambda_=1.0, gamma=1.0))
    assert result.r_i == 0.0
    assert result.r_j == 0.0


@pytest.mark.unit
def test_zero_bias_has_no_reference_current(make_setup, asymmetry):
    """Test deltaT = 0 raises ZeroDenominator"""
    setup = make_setup(chi=2.0, temperatures=(5.0, 5.0))
    with pytest.raises(ZeroDenominator):
        rectification(setup, asymmetry)


@pytest.mark.unit
def test_nesb_rectification_reference(rectification_setup, asymmetry):
    """Test the two-level reference rectifies in the same direction"""
    result = nesb_rectification(rectification_setup, asymmetry)
    assert result.r_i > 0.0
    assert result.r_j == pytest.approx(result.r_i, rel=1e-12)
    symmetric = nesb_rectification(rectification_setup, AsymmetryParams(lambda_=1.0, gamma=0.0))
    assert symmetric.r_i == 0.0


@pytest.mark.unit
def test_sweep_gamma_preserves_grid_order(rectification_setup):
    """Test sweep results follow the grid regardless of thread count"""
    gammas = [0.0, 0.3, 0.6, 0.9]
    serial = sweep_gamma(rectification_setup, [1.0, 2.0], gammas, threads=1)
    parallel = sweep_gamma(rectification_setup, [1.0, 2.0], gammas, threads=4)
    assert [sweep.chi for sweep in serial] == [1.0, 2.0]
    for left, right in zip(serial, parallel):
        assert left.gammas == gammas
        assert [r.r_i for r in left.results] == [r.r_i for r in right.results]
        assert left.argmax_r_i == right.argmax_r_i


@pytest.mark.unit
def test_sweep_temperature_fixed_ratio(rectification_setup, asymmetry):
    """Test the temperature sweep keeps T2/T1 fixed"""
    results = sweep_temperature(rectification_setup, asymmetry, 1.0 / 3.0, [3.0, 6.0, 9.0], threads=2)
    assert len(results) == 3
    assert all(np.isfinite(r.r_i) for r in results)
    assert results[2].reference_forward.particle > results[0].reference_forward.particle


@pytest.mark.slow
def test_rectification_maximum_near_gamma_point_six(rectification_setup):
    """Test argmax of R_I over gamma lies in [0.5, 0.7] for chi = 2"""
    gammas = list(np.linspace(0.0, 1.0, 101))
    (sweep,) = sweep_gamma(rectification_setup, [2.0], gammas)
    assert 0.5 <= sweep.argmax_r_i <= 0.7


@pytest.mark.slow
def test_energy_rectification_reversal(rectification_setup, asymmetry):
    """Test R_J changes sign in chi with R_I still positive"""
    result = find_rj_zero(rectification_setup, asymmetry, (0.5, 8.0))
    assert result.converged
    assert 0.5 * 6.5 <= result.chi_star <= 8.0
    assert result.r_i > 0.0
    assert abs(result.r_j) < 1e-6


@pytest.mark.slow
def test_flat_bath_has_no_reversal(rectification_setup, asymmetry):
    """Test s = 0 keeps the signs of R_I and R_J across the whole bracket"""
    flat = rectification_setup.with_spectral(0.0)
    with pytest.raises(NoSignChange):
        find_rj_zero(flat, asymmetry, (0.5, 8.0))
    results = [rectification(flat.with_chi(chi), asymmetry) for chi in np.linspace(0.5, 8.0, 12)]
    assert len(set(np.sign([result.r_i for result in results]))) == 1
    assert len(set(np.sign([result.r_j for result in results]))) == 1


@pytest.mark.slow
def test_particle_rectification_peaks_at_intermediate_interaction(rectification_setup, asymmetry):
    """Test that |R_I| over chi in {0.5, 2, 8, 50} peaks inside the grid"""
    chis = [0.5, 2.0, 8.0, 50.0]
    r_i = np.array([abs(rectification(rectification_setup.with_chi(chi), asymmetry).r_i) for chi in chis])
    assert int(np.argmax(r_i)) in (1, 2)


@pytest.mark.unit
def test_reversal_found_between_same_sign_endpoints(rectification_setup, asymmetry, monkeypatch):
    """Test that an interior zero is located when R_J has one sign at both ends"""
    def fake_rectification(setup, p, tol=None):
        chi = setup.system.chi
        return SimpleNamespace(r_i=1.0, r_j=(chi - 2.0) * (chi - 6.0))

    monkeypatch.setattr(rectification_service, "rectification", fake_rectification)
    result = find_rj_zero(rectification_setup, asymmetry, (1.0, 10.0))
    assert result.converged
    assert result.chi_star == pytest.approx(2.0, abs=1e-10)
    assert result.bracket[0] < 2.0 < result.bracket[1]


@pytest.mark.unit
def test_reversal_without_interior_zero(rectification_setup, asymmetry, monkeypatch):
    """Test that NoSignChange is raised when every scanned R_J has one sign"""
    def fake_rectification(setup, p, tol=None):
        return SimpleNamespace(r_i=1.0, r_j=setup.system.chi + 1.0)

    monkeypatch.setattr(rectification_service, "rectification", fake_rectification)
    with pytest.raises(NoSignChange):
        find_rj_zero(rectification_setup, asymmetry, (1.0, 10.0))


@pytest.mark.unit
@pytest.mark.parametrize("bracket", [(0.0, 8.0), (8.0, 0.5)])
def test_reversal_bracket_must_be_positive_and_ordered(rectification_setup, asymmetry, bracket):
    """Test that invalid brackets raise DomainError"""
    with pytest.raises(DomainError):
        find_rj_zero(rectification_setup, asymmetry, bracket)

"""
Test two-level, harmonic and high-temperature limit formulas
"""
import math

import pytest

from core.exceptions import DegenerateChi, DomainError, RequiresHarmonic
from services.limits_service import (
    current_ratio_asymptote,
    effective_temperature_harmonic,
    effective_temperature_high_t,
    f_function,
    f_ratio_asymptote,
    high_t_averages,
    high_t_scaling,
    k_function,
    nesb_currents,
    nesb_populations,
    plateau_constant,
)
from services.ness_service import NessService


@pytest.mark.unit
def test_nesb_populations_normalized(two_level_setup):
    """Test the two-level populations sum to one"""
    result = nesb_populations(two_level_setup)
    assert result.rho0 + result.rho1 == pytest.approx(1.0, abs=1e-15)
    assert result.rho0 > result.rho1 > 0.0
    assert result.gap == 51.0


@pytest.mark.unit
def test_nesb_energy_current_is_gap_times_particle_current(two_level_setup):
    """Test J_SB = omega0 I_SB"""
    result = nesb_currents(two_level_setup)
    assert result.current_energy == pytest.approx(51.0 * result.current_particle, rel=1e-15)
    assert result.current_particle > 0.0


@pytest.mark.unit
def test_nesb_currents_vanish_at_equilibrium(make_setup):
    """Test no two-level current without bias"""
    result = nesb_currents(make_setup(chi=50.0, temperatures=(1.0, 1.0)))
    assert result.current_particle == 0.0


@pytest.mark.unit
def test_harmonic_effective_temperature_between_baths(make_setup):
    """Test T_eff lies between the bath temperatures"""
    setup = make_setup(chi=0.0, temperatures=(4.0, 2.0), gammas=(1.0, 1.0))
    t_eff = effective_temperature_harmonic(setup)
    assert 2.0 < t_eff < 4.0


@pytest.mark.unit
def test_harmonic_effective_temperature_trivial_cases(make_setup):
    """Test equal temperatures and a decoupled bath"""
    assert effective_temperature_harmonic(make_setup(temperatures=(3.0, 3.0))) == 3.0
    assert effective_temperature_harmonic(make_setup(gammas=(1.0, 0.0))) == 5.0
    assert effective_temperature_harmonic(make_setup(gammas=(0.0, 1.0))) == 2.0


@pytest.mark.unit
def test_harmonic_effective_temperature_weighted_by_coupling(make_setup):
    """Test stronger coupling pulls T_eff toward that bath"""
    toward_hot = effective_temperature_harmonic(make_setup(gammas=(1.6, 0.4)))
    toward_cold = effective_temperature_harmonic(make_setup(gammas=(0.4, 1.6)))
    assert toward_hot > toward_cold


@pytest.mark.unit
def test_harmonic_effective_temperature_requires_chi_zero(make_setup):
    """Test the harmonic relation refuses chi > 0"""
    with pytest.raises(RequiresHarmonic):
        effective_temperature_harmonic(make_setup(chi=1.0))


@pytest.mark.unit
def test_high_temperature_effective_temperature_and_plateau(make_setup):
    """Test T_tilde and A for explicit numbers"""
    setup = make_setup(temperatures=(5.0, 2.0), gammas=(0.4, 1.6))
    assert effective_temperature_high_t(setup) == pytest.approx((0.4 * 5 + 1.6 * 2) / 2.0, rel=1e-14)
    assert plateau_constant(setup) == pytest.approx(0.01 * 0.64 / 2.0, rel=1e-14)


@pytest.mark.unit
def test_high_temperature_averages(make_setup):
    """Test the continuum averages for explicit numbers"""
    setup = make_setup(chi=10.0, temperatures=(300.0, 100.0), gammas=(1.0, 1.0), omega_c=3e4)
    occupation, energy = high_t_averages(setup)
    assert occupation == pytest.approx(math.sqrt(200.0 / (10.0 * math.pi)), rel=1e-15)
    assert energy == pytest.approx(100.0 + occupation, rel=1e-15)


@pytest.mark.unit
def test_high_temperature_averages_need_interaction(make_setup):
    """Test chi = 0 is rejected"""
    with pytest.raises(DegenerateChi):
        high_t_averages(make_setup(chi=0.0))
    with pytest.raises(DegenerateChi):
        k_function(1.0, make_setup(chi=0.0))
    with pytest.raises(DegenerateChi):
        current_ratio_asymptote(make_setup(chi=0.0), 1.0)


@pytest.mark.unit
def test_f_function_exact_values():
    """Test F(z, s) against closed forms built from Gamma integrals"""
    root_pi = math.sqrt(math.pi)
    assert f_function(1.0, 1.0) == pytest.approx(2.0 * root_pi + 3.0, rel=1e-8)
    assert f_function(4.0, 0.0) == pytest.approx(2.0 + root_pi, rel=1e-8)


@pytest.mark.unit
@pytest.mark.parametrize("z,s", [(-1.0, 1.0), (0.0, 1.0), (1.0, -0.5)])
def test_f_function_rejects_out_of_domain(z, s):
    """Test that z <= 0 or s < 0 raise DomainError"""
    with pytest.raises(DomainError):
        f_function(z, s)


@pytest.mark.unit
def test_f_ratio_asymptote_ohmic():
    """Test the large-z ratio asymptote for s = 1"""
    assert f_ratio_asymptote(9.0, 1.0) == pytest.approx(4.0 * 3.0 / math.sqrt(math.pi), rel=1e-14)


@pytest.mark.unit
def test_f_ratio_asymptote_regular_at_s_zero():
    """Test the asymptote stays finite for a flat bath"""
    assert f_ratio_asymptote(4.0, 0.0) == pytest.approx(2.0 * 2.0 * math.sqrt(math.pi) / 2.0, rel=1e-14)


@pytest.mark.unit
def test_f_ratio_approaches_asymptote():
    """Test F(z, 2)/F(z, 1) tends to its asymptote for large z"""
    z = 1e6
    ratio = f_function(z, 2.0) / f_function(z, 1.0)
    assert ratio / f_ratio_asymptote(z, 1.0) == pytest.approx(1.0, rel=1e-3)


@pytest.mark.unit
def test_k_function_ohmic_closed_form(make_setup):
    """Test K(1) against its expansion in Gamma integrals"""
    setup = make_setup(chi=2.0, temperatures=(30.0, 10.0), gammas=(1.0, 1.0), omega_c=1e4)
    t_eff = effective_temperature_high_t(setup)
    a = math.sqrt(t_eff / 2.0)
    b = 3.0
    c = 2.0 * math.sqrt(t_eff * 2.0)
    integral = math.sqrt(math.pi) * (b + t_eff) + c + a * b
    expected = plateau_constant(setup) * 20.0 / (math.sqrt(math.pi) * t_eff) * integral
    assert k_function(1.0, setup) == pytest.approx(expected, rel=1e-7)


@pytest.mark.unit
def test_k_function_zero_without_bias(make_setup):
    """Test K(s) = 0 when deltaT = 0"""
    assert k_function(1.0, make_setup(chi=1.0, temperatures=(3.0, 3.0))) == 0.0


@pytest.mark.unit
def test_high_t_scaling_bundle(make_setup):
    """Test the scaling bundle uses the spectral exponent of the setup"""
    setup = make_setup(chi=2.0, temperatures=(30.0, 10.0), omega_c=1e4)
    bundle = high_t_scaling(setup)
    assert bundle.t_eff == effective_temperature_high_t(setup)
    assert bundle.amp == plateau_constant(setup)
    assert bundle.k_s == pytest.approx(k_function(1.0, setup), rel=1e-12)
    assert bundle.k_s1 == pytest.approx(k_function(2.0, setup), rel=1e-12)


@pytest.mark.slow
def test_ohmic_conductance_plateau(make_setup):
    """Test I/deltaT approaches A at high temperature for s = 1"""
    setup = make_setup(chi=10.0, temperatures=(1.5e5, 5e4), gammas=(1.0, 1.0), omega_c=1.5e7)
    currents = NessService(setup).steady_currents()
    conductance = currents.particle / setup.delta_t
    assert abs(conductance / plateau_constant(setup) - 1.0) < 0.05
    assert currents.particle == pytest.approx(k_function(1.0, setup), rel=0.05)


@pytest.mark.slow
@pytest.mark.parametrize("t_high,t_low,omega_c", [(400.0, 100.0, 1e5), (4000.0, 1000.0, 1e6)])
def test_energy_to_particle_ratio_square_root_law(make_setup, t_high, t_low, omega_c):
    """Test J/(I omega0) doubles when T1 grows fourfold at fixed r"""
    def ratio(t1):
        setup = make_setup(chi=10.0, temperatures=(t1, t1 / 3.0), gammas=(1.0, 1.0), omega_c=omega_c)
        currents = NessService(setup).steady_currents()
        return currents.energy / (currents.particle * setup.system.omega0)

    assert ratio(t_high) / ratio(t_low) == pytest.approx(2.0, abs=0.15)

"""
Test steady-state populations, truncation and currents
"""
import math

import numpy as np
import pytest

from core.config import settings
from core.exceptions import ConfigError, TruncationOverflow
from models.bose_hubbard import gibbs_populations
from services.audit_service import AuditService
from enums import AuditAction
from services.limits_service import effective_temperature_harmonic, nesb_currents, nesb_populations
from services.ness_service import NessService


EQUILIBRIUM_GRID = [(t, chi) for t in (0.5, 2.0, 10.0) for chi in (0.0, 1.0, 4.0)]


@pytest.mark.unit
@pytest.mark.parametrize("temperature,chi", EQUILIBRIUM_GRID)
def test_equilibrium_recovers_gibbs_state(make_setup, temperature, chi):
    """Test that equal temperatures give the Gibbs distribution"""
    setup = make_setup(chi=chi, temperatures=(temperature, temperature))
    dist = NessService(setup).steady_populations()
    reference = gibbs_populations(setup.system, temperature, dist.n_max)
    assert np.max(np.abs(dist.rho - reference)) < 1e-12


@pytest.mark.unit
@pytest.mark.parametrize("temperature,chi", EQUILIBRIUM_GRID)
def test_equilibrium_currents_vanish(make_setup, temperature, chi):
    """Test that no current flows at equilibrium"""
    setup = make_setup(chi=chi, temperatures=(temperature, temperature))
    currents = NessService(setup).steady_currents()
    assert abs(currents.particle) < 1e-13
    assert abs(currents.energy) < 1e-13


@pytest.mark.unit
def test_distribution_normalized_with_small_tail(population_setup):
    """Test normalization, tail bound and truncation diagnostics"""
    dist = NessService(population_setup).steady_populations()
    assert dist.rho.sum() == pytest.approx(1.0, abs=1e-12)
    assert np.all(dist.rho >= 0.0)
    assert dist.tail_bound < settings.default_tol
    assert dist.ratio_check < 1e-12
    assert dist.n_max >= 1
    assert dist.z_tilde == pytest.approx(1.0 / dist.rho[0], rel=1e-12)


@pytest.mark.unit
def test_populations_decrease_monotonically(population_setup):
    """Test rho_n decreases since every ratio is below one"""
    dist = NessService(population_setup).steady_populations()
    positive = dist.rho[dist.rho > 0.0]
    assert np.all(np.diff(positive) < 0.0)


@pytest.mark.unit
def test_strong_interaction_low_temperature_is_two_level(make_setup):
    """Test that chi=4 at low temperature leaves level 2 nearly empty"""
    setup = make_setup(chi=4.0, temperatures=(1.0, 0.5))
    rho = NessService(setup).steady_populations().rho
    assert rho[2] / rho[0] < 1e-3


@pytest.mark.unit
def test_two_level_limit_populations(two_level_setup):
    """Test rho_0 and rho_1 against the two-level closed form"""
    dist = NessService(two_level_setup).steady_populations()
    reference = nesb_populations(two_level_setup)
    assert abs(dist.rho[0] - reference.rho0) < 1e-6
    assert abs(dist.rho[1] - reference.rho1) < 1e-6


@pytest.mark.unit
def test_two_level_limit_currents(two_level_setup):
    """Test I and J against the two-level currents"""
    currents = NessService(two_level_setup).steady_currents()
    reference = nesb_currents(two_level_setup)
    gap = two_level_setup.system.gap
    assert currents.particle == pytest.approx(reference.current_particle, rel=1e-4)
    assert abs(currents.energy - gap * currents.particle) / abs(currents.energy) < 1e-4


@pytest.mark.unit
def test_harmonic_populations_are_geometric(make_setup):
    """Test chi=0 populations follow exp(-beta_eff Omega0)"""
    setup = make_setup(chi=0.0, temperatures=(4.0, 2.0), gammas=(1.0, 1.0))
    rho = NessService(setup).steady_populations().rho[:50]
    ratios = rho[1:] / rho[:-1]
    assert np.max(np.abs(ratios - ratios[0])) < 1e-10
    beta_eff = 1.0 / effective_temperature_harmonic(setup)
    assert ratios[0] == pytest.approx(math.exp(-beta_eff * setup.system.omega0), abs=1e-10)


@pytest.mark.unit
def test_inflow_forms_agree_with_kernel_form(population_setup):
    """Test per-bath inflow currents match the kernel currents"""
    currents = NessService(population_setup).steady_currents()
    assert currents.inflow1.particle == pytest.approx(currents.particle, rel=1e-8)
    assert currents.inflow1.energy == pytest.approx(currents.energy, rel=1e-8)
    assert currents.inflow2.particle == pytest.approx(-currents.particle, rel=1e-8)
    assert not currents.degenerate


@pytest.mark.unit
def test_current_flows_from_hot_bath(population_setup, make_setup):
    """Test the sign of I and J follows the temperature bias"""
    forward = NessService(population_setup).steady_currents()
    backward = NessService(make_setup(chi=1.0, temperatures=(2.0, 5.0))).steady_currents()
    assert forward.particle > 0.0 and forward.energy > 0.0
    assert backward.particle < 0.0 and backward.energy < 0.0


@pytest.mark.unit
def test_observables_bundle(population_setup):
    """Test the observables bundle agrees with the individual averages"""
    service = NessService(population_setup)
    observables = service.observables()
    dist = service.steady_populations()
    assert observables.occupation == pytest.approx(float(np.dot(dist.levels, dist.rho)), rel=1e-14)
    assert observables.energy == pytest.approx(service.mean_energy(), rel=1e-14)
    assert observables.currents.particle == service.steady_currents().particle
    assert observables.n_max == dist.n_max


@pytest.mark.unit
def test_populations_independent_of_eps(make_setup):
    """Test that rho_n does not depend on the coupling eps"""
    weak = NessService(make_setup(chi=1.0, eps=0.05)).steady_populations()
    strong = NessService(make_setup(chi=1.0, eps=0.5)).steady_populations()
    assert weak.n_max == strong.n_max
    np.testing.assert_array_equal(weak.rho, strong.rho)


@pytest.mark.unit
def test_tight_tolerance_bounds_tail(population_setup):
    """Test the tail bound stays below a tighter tolerance"""
    dist = NessService(population_setup, tol=1e-12).steady_populations()
    assert dist.tail_bound < 1e-12


@pytest.mark.unit
def test_truncation_is_logged(population_setup):
    """Test that the chosen truncation is recorded in the audit log"""
    audit = AuditService()
    n_max = NessService(population_setup, audit=audit).truncation_level()
    entries = [e for e in audit.entries if e.action == AuditAction.TRUNCATION_SELECTED]
    assert entries and entries[0].details["n_max"] == n_max


@pytest.mark.unit
@pytest.mark.parametrize("tol", [0.0, -1e-10, 1e-3])
def test_invalid_tolerance_rejected(population_setup, tol):
    """Test that tolerances outside (0, 1e-6] raise ConfigError"""
    with pytest.raises(ConfigError):
        NessService(population_setup, tol=tol)


@pytest.mark.unit
def test_truncation_cap_overflow(make_setup, monkeypatch):
    """Test that a truncation beyond the cap raises TruncationOverflow"""
    monkeypatch.setattr(settings, "truncation_cap", 64)
    setup = make_setup(chi=0.0, temperatures=(50.0, 50.0), omega_c=1e5)
    with pytest.raises(TruncationOverflow):
        NessService(setup).truncation_level()


@pytest.mark.unit
def test_particle_current_decreases_with_interaction(make_setup):
    """Test that I falls strictly with chi at T_m = 5, deltaT = 5"""
    chis = [0.5, 1.0, 2.0, 4.0, 8.0]
    currents = np.array([
        NessService(make_setup(chi=chi, temperatures=(7.5, 2.5))).steady_currents().particle
        for chi in chis
    ])
    assert np.all(currents > 0.0)
    assert np.all(np.diff(currents) < 0.0)


@pytest.mark.slow
def test_high_temperature_averages_continuum_limit(make_setup):
    """Test <N> and <H> against the high-temperature continuum forms"""
    setup = make_setup(
        chi=10.0,
        temperatures=(1.5e5, 5e4),
        gammas=(1.0, 1.0),
        omega_c=1.5e7,
    )
    service = NessService(setup)
    t_eff = 1e5
    occupation = math.sqrt(t_eff / (math.pi * 10.0))
    assert abs(service.mean_occupation() / occupation - 1.0) < 0.03
    assert abs(service.mean_energy() / (0.5 * t_eff + occupation) - 1.0) < 0.05

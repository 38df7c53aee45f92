"""
Pytest configuration and fixtures
"""
import sys
from pathlib import Path

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

import pytest

from schemas.params import AsymmetryParams, BathParams, Setup, SpectralParams, SystemParams


def build_setup(
    chi=0.0,
    temperatures=(5.0, 2.0),
    gammas=(0.4, 1.6),
    omega0=1.0,
    eps=0.1,
    s=1.0,
    omega_c=1000.0,
    mus=(0.0, 0.0),
):
    """Build a validated Setup from plain numbers"""
    return Setup(
        system=SystemParams(omega0=omega0, chi=chi, eps=eps),
        bath1=BathParams(gamma=gammas[0], temperature=temperatures[0], mu=mus[0]),
        bath2=BathParams(gamma=gammas[1], temperature=temperatures[1], mu=mus[1]),
        spectral=SpectralParams(s=s, omega_c=omega_c),
    )


@pytest.fixture
def make_setup():
    """Factory for Setup objects with the default couplings"""
    return build_setup


@pytest.fixture
def population_setup():
    """Hot bath weakly coupled: Gamma=(0.4, 1.6), T=(5, 2), chi=1"""
    return build_setup(chi=1.0, temperatures=(5.0, 2.0))


@pytest.fixture
def dynamics_setup():
    """Relaxation parameters: T=(4, 2), Gamma=(0.4, 1.6), eps=0.1, chi=1"""
    return build_setup(chi=1.0, temperatures=(4.0, 2.0))


@pytest.fixture
def two_level_setup():
    """Strong interaction: chi=50, T=(1.5, 0.5), Gamma=(0.4, 1.6)"""
    return build_setup(chi=50.0, temperatures=(1.5, 0.5))


@pytest.fixture
def rectification_setup():
    """Forward bias T_m=5, deltaT=5 with symmetric placeholder couplings"""
    return build_setup(chi=2.0, temperatures=(7.5, 2.5), gammas=(1.0, 1.0))


@pytest.fixture
def asymmetry():
    """Lambda=1, gamma=0.6"""
    return AsymmetryParams(lambda_=1.0, gamma=0.6)


@pytest.fixture
def config_file(tmp_path):
    """Write a key = value config file and return its path"""
    def write(text, name="run.cfg"):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)
    return write

"""
Test settings, run configuration, grids and config/output repositories
"""
import json

import pytest
from pydantic import ValidationError

from core.config import Settings
from core.exceptions import ConfigError
from enums import OutputFormat, ScanAxis
from repositories.config_repository import ConfigRepository
from repositories.output_repository import OutputRepository, OutputTable
from schemas.run_config import RunConfig
from utils.grids import parse_grid


pytestmark = pytest.mark.unit


# Settings

def test_settings_defaults():
    """Test the documented numerical defaults"""
    current = Settings()
    assert current.default_tol == 1e-10
    assert current.admissibility_ratio == 1e-6
    assert current.csv_significant_digits == 17


def test_settings_read_environment(monkeypatch):
    """Test SSBH_ environment variables override defaults"""
    monkeypatch.setenv("SSBH_THREADS", "3")
    monkeypatch.setenv("SSBH_LOG_LEVEL", "debug")
    current = Settings()
    assert current.threads == 3
    assert current.log_level == "DEBUG"


@pytest.mark.parametrize("field,value", [
    ("default_tol", 1e-3),
    ("quadrature_rel_tol", 1e-15),
    ("truncation_cap", 0),
    ("threads", 0),
])
def test_settings_reject_out_of_range(field, value):
    """Test validators reject invalid settings"""
    with pytest.raises(ValidationError):
        Settings(**{field: value})


# Grids

def test_parse_grid_forms():
    """Test explicit, linear and logarithmic grids"""
    assert parse_grid("0.5, 1, 4") == [0.5, 1.0, 4.0]
    assert parse_grid("0:1:5") == [0.0, 0.25, 0.5, 0.75, 1.0]
    assert parse_grid("log:1:100:3") == pytest.approx([1.0, 10.0, 100.0], rel=1e-14)
    assert parse_grid([1, 2]) == [1.0, 2.0]
    assert parse_grid(3) == [3.0]


@pytest.mark.parametrize("text", ["", ",", "1:2", "log:0:1:3", "0:1:0", "a,b"])
def test_parse_grid_rejects_invalid(text):
    """Test malformed grids raise ValueError"""
    with pytest.raises(ValueError):
        parse_grid(text)


# RunConfig

def test_run_config_from_strings():
    """Test string values from a config file are coerced"""
    config = RunConfig.model_validate({
        "chi": "1", "gamma1": "0.4", "gamma2": "1.6", "T1": "5", "T2": "2",
    })
    setup = config.base_setup()
    assert setup.gammas == (0.4, 1.6)
    assert setup.temperatures == (5.0, 2.0)
    assert setup.system.chi == 1.0
    assert config.tol == 1e-10


def test_run_config_mean_temperature_and_bias():
    """Test T_m/deltaT resolve to T1 = T_m + deltaT/2 and T2 = T_m - deltaT/2"""
    config = RunConfig.model_validate({"gamma1": 1, "gamma2": 1, "T_m": 5, "deltaT": 5})
    assert config.base_setup().temperatures == (7.5, 2.5)


def test_run_config_temperature_ratio():
    """Test T1/r gives T2 = r T1"""
    config = RunConfig.model_validate({"gamma1": 1, "gamma2": 1, "T1": 3, "r": 0.5})
    assert config.base_setup().temperatures == (3.0, 1.5)


def test_run_config_asymmetry_couplings():
    """Test lambda/asymmetry resolve to Gamma1 = Lambda(1-gamma), Gamma2 = Lambda(1+gamma)"""
    config = RunConfig.model_validate({"lambda": 1, "asymmetry": 0.5, "T1": 5, "T2": 2})
    assert config.base_setup().gammas == (0.5, 1.5)
    assert config.has_asymmetry


@pytest.mark.parametrize("values", [
    {"T1": 5, "T2": 2},
    {"gamma1": 1, "T1": 5, "T2": 2},
    {"gamma1": 1, "gamma2": 1, "lambda": 1, "asymmetry": 0.2, "T1": 5, "T2": 2},
    {"gamma1": 1, "gamma2": 1, "T1": 5},
    {"gamma1": 1, "gamma2": 1, "T1": 5, "T2": 2, "r": 0.5},
    {"gamma1": 1, "gamma2": 1, "T1": 5, "T2": 2, "T_m": 3, "deltaT": 1},
    {"gamma1": 1, "gamma2": 1, "T1": 5, "r": 1.5},
    {"gamma1": 1, "gamma2": 1, "T1": 5, "T2": 2, "unknown": 1},
    {"gamma1": 1, "gamma2": 1, "T1": 5, "T2": 2, "axis": "chi"},
    {"gamma1": 1, "gamma2": 1, "T1": 5, "T2": 2, "tol": 1e-3},
])
def test_run_config_rejects_invalid_combinations(values):
    """Test missing, duplicated or unknown keys are rejected"""
    with pytest.raises(ValidationError):
        RunConfig.model_validate(values)


def test_run_config_axis_points():
    """Test each axis value replaces the quantity it sweeps"""
    chi_axis = RunConfig.model_validate({"gamma1": 1, "gamma2": 1, "T1": 5, "T2": 2, "axis": "chi", "grid": "0,2"})
    assert chi_axis.axis == ScanAxis.CHI
    assert chi_axis.setup_at(2.0).system.chi == 2.0

    scaled = RunConfig.model_validate({"gamma1": 1, "gamma2": 1, "r": 0.5, "chi": 1, "axis": "T1_over_omega0", "grid": "10"})
    assert scaled.setup_at(10.0).temperatures == (20.0, 10.0)

    bias = RunConfig.model_validate({"gamma1": 1, "gamma2": 1, "T_m": 5, "axis": "deltaT", "grid": "-5,5"})
    assert bias.setup_at(-5.0).temperatures == (2.5, 7.5)

    gamma = RunConfig.model_validate({"lambda": 2, "T1": 5, "T2": 2, "axis": "gamma", "grid": "0:1:3"})
    assert gamma.setup_at(0.5).gammas == (1.0, 3.0)


def test_run_config_resolved_round_trip():
    """Test the resolved config validates back to the same model"""
    config = RunConfig.model_validate({"lambda": 1, "asymmetry": 0.6, "T_m": 5, "deltaT": 5, "axis": "chi", "grid": "0.5:8:4"})
    resolved = config.resolved()
    assert resolved["lambda"] == 1.0
    assert "gamma1" not in resolved
    assert RunConfig.model_validate(resolved) == config


# ConfigRepository

def test_config_repository_reads_key_values(config_file):
    """Test comments, blank lines and whitespace in key = value files"""
    path = config_file("# rectification run\nchi = 1   # interaction\n\nT1=5\n")
    assert ConfigRepository().load(path) == {"chi": "1", "T1": "5"}


@pytest.mark.parametrize("text", ["chi 1\n", "chi = 1\nchi = 2\n", "= 3\n"])
def test_config_repository_rejects_bad_lines(config_file, text):
    """Test malformed lines and duplicate keys raise ConfigError"""
    with pytest.raises(ConfigError):
        ConfigRepository().load(config_file(text))


def test_config_repository_missing_file(tmp_path):
    """Test a missing file raises ConfigError"""
    with pytest.raises(ConfigError):
        ConfigRepository().load(str(tmp_path / "missing.cfg"))


def test_config_repository_reingests_json_output(config_file):
    """Test the meta.config object of a JSON output is loaded"""
    document = {"schema_version": "1.0", "meta": {"config": {"chi": 2.0}}, "columns": [], "rows": []}
    path = config_file(json.dumps(document), name="previous.json")
    assert ConfigRepository().load(path) == {"chi": 2.0}


def test_config_repository_overrides():
    """Test --set pairs override file values"""
    repository = ConfigRepository()
    merged = repository.apply_overrides({"chi": "1"}, ["chi=2", "T1 = 5"])
    assert merged == {"chi": "2", "T1": "5"}
    with pytest.raises(ConfigError):
        repository.apply_overrides({}, ["chi"])


# OutputRepository

def test_output_csv_has_metadata_and_full_precision():
    """Test CSV output carries '#' metadata lines and 17 significant digits"""
    table = OutputTable(columns=["x", "y"], rows=[[0.1, None], [1.0 / 3.0, 2.0]], meta={"command": "scan"})
    text = OutputRepository().render(table, OutputFormat.CSV)
    lines = text.splitlines()
    assert lines[0] == '# command: "scan"'
    assert lines[1] == "x,y"
    assert lines[2] == "0.10000000000000001,"
    assert lines[3] == "0.33333333333333331,2"


def test_output_json_document():
    """Test JSON output holds schema_version, meta, columns and rows"""
    table = OutputTable(columns=["x"], rows=[[float("nan")], [1.5]], meta={"n_max": 3})
    document = json.loads(OutputRepository().render(table, OutputFormat.JSON))
    assert document["schema_version"] == "1.0"
    assert document["meta"] == {"n_max": 3}
    assert document["rows"] == [[None], [1.5]]


def test_output_write_to_file(tmp_path):
    """Test writing to a path returns the path"""
    path = tmp_path / "out.csv"
    table = OutputTable(columns=["x"], rows=[[1.0]])
    assert OutputRepository().write(table, OutputFormat.CSV, str(path)) == str(path)
    assert path.read_text(encoding="utf-8") == "x\n1\n"

"""
Tests for configuration management.
"""

import json

import pytest
import yaml

from streetflow.config import (
    MAX_DEPTH_ENV,
    Config,
    ConfigValidationError,
    OracleConfig,
    OutputFormat,
    TimeProfileConfig,
)


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    """Keep a depth override from the calling shell out of the tests."""
    monkeypatch.delenv(MAX_DEPTH_ENV, raising=False)


@pytest.fixture
def temp_config_file(tmp_path):
    """Create a temporary config file for testing."""
    config = {
        "max_depth": 8,
        "max_steps": 500,
        "seed": 7,
        "output_format": "svg",
        "oracle": {"max_doublings": 20, "sample_points": 50},
        "time_profile": {"c1": 2.0, "c2": 0.5},
    }
    config_file = tmp_path / "test_config.json"
    with open(config_file, "w") as f:
        json.dump(config, f)
    return config_file


@pytest.fixture
def temp_yaml_config_file(tmp_path):
    """Create a temporary YAML config file for testing."""
    config = {
        "max_depth": 12,
        "hard_depth_limit": 32,
        "oracle": {"sample_points": 10},
        "time_profile": {"c1": 1.5, "c2": 1.5, "t0": 0.25},
    }
    config_file = tmp_path / "test_config.yaml"
    with open(config_file, "w") as f:
        yaml.dump(config, f)
    return config_file


def test_config_loads_default_when_file_not_found():
    """Test that default config is loaded when file doesn't exist."""
    config = Config.load("nonexistent.json")
    assert config.max_depth == 16
    assert config.output_format == OutputFormat.JSON
    assert config.oracle.max_doublings == 40


def test_config_loads_from_json_file(temp_config_file):
    """Test that config loads correctly from JSON file."""
    config = Config.load(str(temp_config_file))
    assert config.max_depth == 8
    assert config.seed == 7
    assert config.output_format == OutputFormat.SVG
    assert config.oracle.sample_points == 50
    assert config.config_path == str(temp_config_file)


def test_config_loads_from_yaml_file(temp_yaml_config_file):
    """Test that config loads correctly from YAML file."""
    config = Config.load(str(temp_yaml_config_file))
    assert config.max_depth == 12
    assert config.hard_depth_limit == 32
    assert config.time_profile.t0 == 0.25


def test_config_loads_from_path_object(temp_config_file):
    """Test that config loads correctly from Path object."""
    config = Config.load(temp_config_file)
    assert config.max_steps == 500


def test_env_overrides_max_depth(temp_config_file, monkeypatch):
    """The environment wins over the file."""
    monkeypatch.setenv(MAX_DEPTH_ENV, "5")
    assert Config.load(temp_config_file).max_depth == 5


def test_env_override_must_be_integer(monkeypatch):
    monkeypatch.setenv(MAX_DEPTH_ENV, "deep")
    with pytest.raises(ConfigValidationError):
        Config.load("nonexistent.json")


def test_unreadable_file(tmp_path):
    """Broken JSON is a configuration error."""
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    with pytest.raises(ConfigValidationError):
        Config.load(path)


def test_config_validation():
    """Bounds must be positive and below the hard limit."""
    with pytest.raises(ConfigValidationError):
        Config(max_depth=0)
    with pytest.raises(ConfigValidationError):
        Config(max_depth=80)
    with pytest.raises(ConfigValidationError):
        Config(max_steps=0)


def test_nested_validation():
    with pytest.raises(ConfigValidationError):
        OracleConfig(max_doublings=0)
    with pytest.raises(ConfigValidationError):
        TimeProfileConfig(c1=-1.0)


def test_invalid_output_format():
    with pytest.raises(Exception):
        Config(output_format="pdf")


def test_invalid_values_in_file(tmp_path):
    """Validation failures while loading surface as configuration errors."""
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"max_depth": "many"}))
    with pytest.raises(ConfigValidationError):
        Config.load(path)


def test_save_config_json(tmp_path):
    """Test saving config to JSON file."""
    config = Config(output_format=OutputFormat.SVG)
    save_path = tmp_path / "saved_config.json"
    config.save(str(save_path))
    with open(save_path) as f:
        saved_config = json.load(f)
    assert saved_config["output_format"] == "svg"
    assert saved_config["max_depth"] == config.max_depth
    assert "config_path" not in saved_config


def test_save_config_yaml(tmp_path):
    """Test saving config to YAML file."""
    config = Config(seed=3)
    save_path = tmp_path / "saved_config.yaml"
    config.save(str(save_path), format="yaml")
    with open(save_path) as f:
        saved_config = yaml.safe_load(f)
    assert saved_config["seed"] == 3
    assert saved_config["time_profile"]["c1"] == 1.0


def test_config_round_trip(tmp_path):
    """A saved configuration loads back unchanged."""
    config = Config(max_depth=10, oracle={"sample_points": 30}, time_profile={"c2": 3.0})
    path = tmp_path / "round.json"
    config.save(str(path))
    loaded = Config.load(path)
    assert loaded.model_dump(exclude={"config_path"}) == config.model_dump(exclude={"config_path"})

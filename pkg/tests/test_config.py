#!/usr/bin/env python3
"""
Tests for config.py - Configuration Management
"""

import os
import json
import tempfile
import pytest
from pathlib import Path

import sys
sys.path.insert(0, str(Path(__file__).parent.parent))

from config import (
    Config,
    GaussianConfig,
    OutputConfig,
    SeparationConfig,
    ConfigError,
    ConfigNotFoundError,
    get_env,
    get_env_bool,
    get_env_int,
    get_env_float,
    load_config,
)


class TestEnvHelpers:
    """Tests for environment variable helper functions."""

    def test_get_env_with_prefix(self, monkeypatch):
        """Test get_env with ANTERIAL_ prefix."""
        monkeypatch.setenv("ANTERIAL_TEST_VAR", "prefixed_value")
        assert get_env("TEST_VAR") == "prefixed_value"

    def test_get_env_without_prefix(self, monkeypatch):
        """Test get_env fallback to non-prefixed."""
        monkeypatch.setenv("TEST_VAR2", "unprefixed_value")
        assert get_env("TEST_VAR2") == "unprefixed_value"

    def test_get_env_default(self):
        """Test get_env returns default when not set."""
        assert get_env("NONEXISTENT_VAR", "default") == "default"

    def test_get_env_bool_true(self, monkeypatch):
        """Test get_env_bool with truthy values."""
        for val in ["1", "true", "yes", "on", "TRUE", "Yes"]:
            monkeypatch.setenv("ANTERIAL_BOOL_TEST", val)
            assert get_env_bool("BOOL_TEST") is True

    def test_get_env_bool_false(self, monkeypatch):
        """Test get_env_bool with falsy values."""
        for val in ["0", "false", "no", "off", "FALSE", "No"]:
            monkeypatch.setenv("ANTERIAL_BOOL_TEST", val)
            assert get_env_bool("BOOL_TEST") is False

    def test_get_env_int(self, monkeypatch):
        """Test get_env_int conversion."""
        monkeypatch.setenv("ANTERIAL_INT_TEST", "42")
        assert get_env_int("INT_TEST") == 42

    def test_get_env_int_invalid(self, monkeypatch):
        """Test get_env_int with invalid value."""
        monkeypatch.setenv("ANTERIAL_INT_TEST", "not_an_int")
        assert get_env_int("INT_TEST", 99) == 99
        assert get_env_int("INT_TEST") is None

    def test_get_env_float(self, monkeypatch):
        """Test get_env_float conversion, including exponent notation."""
        monkeypatch.setenv("ANTERIAL_FLOAT_TEST", "1e-7")
        assert get_env_float("FLOAT_TEST") == 1e-7


class TestSectionConfigs:
    """Tests for the section dataclasses."""

    def test_separation_defaults(self):
        """Test the exponential-check guards."""
        sep = SeparationConfig()
        assert sep.bruteforce_max_nodes == 10
        assert sep.equivalence_max_nodes == 12
        assert sep.minimality_max_free == 20

    def test_gaussian_defaults(self):
        """Test tolerances and simulation sizes."""
        gauss = GaussianConfig()
        assert gauss.zero_tol == 1e-9
        assert gauss.ci_tol == 1e-8
        assert gauss.alpha == 0.01
        assert gauss.samples == 10000
        assert gauss.gibbs_samples == 1000
        assert gauss.burn_in == 10000

    def test_output_defaults(self):
        """Test output formatting defaults."""
        assert OutputConfig().float_digits == 17
        assert OutputConfig().indent == 2


class TestConfig:
    """Tests for main Config class."""

    def test_default_config(self):
        """Test default configuration."""
        config = Config()
        assert config.seed == 7
        assert config.log_level == "WARNING"
        assert config.verbose is False
        assert config.validate() == []

    def test_log_level_normalization(self):
        """Test log levels are upper-cased."""
        assert Config(log_level="debug").log_level == "DEBUG"

    def test_from_dict(self):
        """Test loading from dictionary."""
        data = {
            "seed": 11,
            "gaussian": {"alpha": 0.05, "burn_in": 500},
            "separation": {"bruteforce_max_nodes": 8},
            "log_level": "info",
        }

        config = Config.from_dict(data)

        assert config.seed == 11
        assert config.gaussian.alpha == 0.05
        assert config.gaussian.burn_in == 500
        assert config.gaussian.samples == 10000
        assert config.separation.bruteforce_max_nodes == 8
        assert config.log_level == "INFO"

    def test_from_dict_ignores_unknown_keys(self):
        """Test unknown keys are dropped."""
        config = Config.from_dict({"gaussian": {"nonsense": 1}, "extra": True})
        assert config.gaussian == GaussianConfig()

    def test_from_json(self):
        """Test loading from JSON file."""
        data = {"seed": 3, "output": {"float_digits": 10}}

        with tempfile.NamedTemporaryFile(mode='w', suffix='.json', delete=False) as f:
            json.dump(data, f)
            filepath = f.name

        try:
            config = Config.from_json(filepath)
            assert config.seed == 3
            assert config.output.float_digits == 10
        finally:
            os.unlink(filepath)

    def test_from_json_invalid(self, tmp_path):
        """Test malformed JSON raises ConfigError."""
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        with pytest.raises(ConfigError):
            Config.from_json(str(path))

    def test_from_json_not_found(self):
        """Test error when JSON file not found."""
        with pytest.raises(ConfigNotFoundError):
            Config.from_json("nonexistent_file.json")

    def test_from_env(self, mock_env, clean_env):
        """Test loading from environment variables."""
        mock_env(SEED="42", ALPHA="0.001", BURN_IN="200", BRUTEFORCE_MAX_NODES="6",
                 LOG_LEVEL="debug", VERBOSE="yes")

        config = Config.from_env()

        assert config.seed == 42
        assert config.gaussian.alpha == 0.001
        assert config.gaussian.burn_in == 200
        assert config.separation.bruteforce_max_nodes == 6
        assert config.log_level == "DEBUG"
        assert config.verbose is True

    def test_validate_tolerances(self):
        """Test validation catches non-positive tolerances and a bad alpha."""
        config = Config()
        config.gaussian.zero_tol = 0.0
        config.gaussian.alpha = 1.5
        errors = config.validate()
        assert any("zero_tol" in e for e in errors)
        assert any("alpha" in e for e in errors)

    def test_validate_guards_and_level(self):
        """Test validation catches tiny guards and unknown log levels."""
        config = Config(log_level="chatty")
        config.separation.equivalence_max_nodes = 1
        errors = config.validate()
        assert any("equivalence_max_nodes" in e for e in errors)
        assert any("log_level" in e for e in errors)

    def test_save_yaml_round_trip(self, tmp_path):
        """Test saving to YAML and loading it back."""
        config = Config(seed=5)
        config.gaussian.samples = 1234
        path = tmp_path / "nested" / "anterial.yaml"

        config.save_yaml(str(path))
        loaded = Config.from_yaml(str(path))

        assert loaded.to_dict() == config.to_dict()

    def test_repr(self):
        """Test repr shows seed and log level."""
        assert repr(Config()) == "Config(seed=7, log_level=WARNING)"


class TestConfigLoadPrecedence:
    """Test configuration load precedence: ENV > YAML > JSON > defaults."""

    def test_env_overrides_json(self, tmp_path, mock_env, clean_env):
        """Test that environment variables override JSON config."""
        path = tmp_path / ".anterial.json"
        path.write_text(json.dumps({"seed": 1, "gaussian": {"alpha": 0.2}}))

        mock_env(SEED="99")
        config = Config.load_with_env(str(path))

        assert config.seed == 99  # From ENV
        assert config.gaussian.alpha == 0.2  # From JSON

    def test_yaml_preferred_over_json(self, tmp_path, monkeypatch, clean_env):
        """Test auto-detection picks anterial.yaml before .anterial.json."""
        (tmp_path / "anterial.yaml").write_text("seed: 21\n")
        (tmp_path / ".anterial.json").write_text(json.dumps({"seed": 22}))
        monkeypatch.chdir(tmp_path)

        assert Config.load().seed == 21

    def test_json_when_no_yaml(self, tmp_path, monkeypatch, clean_env):
        """Test auto-detection falls back to .anterial.json."""
        (tmp_path / ".anterial.json").write_text(json.dumps({"seed": 22}))
        monkeypatch.chdir(tmp_path)

        assert load_config().seed == 22

    def test_defaults_when_nothing_found(self, tmp_path, monkeypatch, clean_env):
        """Test defaults apply with no files and no environment."""
        monkeypatch.chdir(tmp_path)
        assert Config.load().to_dict() == Config().to_dict()

    def test_unsupported_suffix(self, tmp_path):
        """Test unknown config formats are rejected."""
        path = tmp_path / "anterial.toml"
        path.write_text("seed = 1")
        with pytest.raises(ConfigError):
            Config.load_with_env(str(path))


if __name__ == "__main__":
    pytest.main([__file__, "-v"])

"""
Unit tests for configuration manager.
"""

import json
import logging
import os
from unittest.mock import patch, mock_open

import pytest

from src.core.config_manager import ConfigManager
from src.gabor.numerics import SolverSettings


class TestConfigManager:
    """Test ConfigManager functionality."""

    def test_init_with_default_config(self, test_config_path):
        """Test initialization with default configuration."""
        with patch('builtins.open', mock_open()):
            with patch('os.path.exists', return_value=False):
                config = ConfigManager(test_config_path)

                assert config.get_tolerance("frame") == 1e-10
                assert config.get_tolerance("wexler_raz") == 1e-8
                assert config.get_iteration_cap("jacobi_sweeps") == 40
                assert config.get_default_seed() == 0
                assert config.get_default_trials() == 100
                assert config.get_significant_digits() == 17
                assert config.get_log_level() == "WARNING"

    def test_init_load_existing_config(self, test_config_path):
        """Test initialization with an existing configuration file."""
        existing_config = {
            "tolerances": {"frame": 1e-6},
            "random": {"default_trials": 25},
            "logging": {"level": "debug"}
        }

        with patch('builtins.open', mock_open(read_data=json.dumps(existing_config))):
            with patch('os.path.exists', return_value=True):
                config = ConfigManager(test_config_path)

                assert config.get_tolerance("frame") == 1e-6
                assert config.get_default_trials() == 25
                assert config.get_log_level() == "DEBUG"
                # Keys missing from the file keep their defaults
                assert config.get_tolerance("cg") == 1e-12
                assert config.get_default_seed() == 0

    def test_init_load_invalid_config(self, test_config_path):
        """Test initialization with an invalid configuration file."""
        with patch('builtins.open', mock_open(read_data="invalid json")):
            with patch('os.path.exists', return_value=True):
                config = ConfigManager(test_config_path)
                assert config.get_tolerance("frame") == 1e-10

    def test_get_set_dot_notation(self, test_config_path):
        """Test getting and setting nested values."""
        config = ConfigManager(test_config_path)

        config.set("tolerances.identity_check", 1e-6, persist=False)
        assert config.get("tolerances.identity_check") == 1e-6
        assert config.get_tolerance("identity_check") == 1e-6

        config.set("new.nested.key", 3, persist=False)
        assert config.get("new.nested.key") == 3
        assert not os.path.exists(test_config_path)

    def test_get_missing_key(self, test_config_path):
        """Test default values for missing keys."""
        config = ConfigManager(test_config_path)
        assert config.get("missing.key") is None
        assert config.get("missing.key", "fallback") == "fallback"
        assert config.get("tolerances.frame.deeper", 5) == 5

    def test_set_persists(self, test_config_path):
        """Test that set writes the file by default."""
        config = ConfigManager(test_config_path)
        config.set("random.default_seed", 42)

        with open(test_config_path, 'r', encoding='utf-8') as f:
            saved = json.load(f)
        assert saved["random"]["default_seed"] == 42
        assert ConfigManager(test_config_path).get_default_seed() == 42

    def test_solver_settings_defaults(self, test_config_path):
        """Test that solver settings match the numerics defaults when nothing is stored."""
        assert ConfigManager(test_config_path).solver_settings() == SolverSettings()

    def test_solver_settings_from_file(self, test_config_path):
        """Test that stored solver values reach the settings object."""
        with open(test_config_path, 'w', encoding='utf-8') as f:
            json.dump({"tolerances": {"cg": 1e-9, "jacobi_offdiag": 1e-11},
                       "iterations": {"cg_factor": 3, "jacobi_sweeps": 7}}, f)
        settings = ConfigManager(test_config_path).solver_settings()
        assert settings.cg_tolerance == 1e-9
        assert settings.jacobi_threshold == 1e-11
        assert settings.jacobi_max_sweeps == 7
        assert settings.cg_cap(12) == 36

    @pytest.mark.parametrize("name", ["frame", "wexler_raz", "identity_check", "cg",
                                      "jacobi_offdiag"])
    def test_every_tolerance_has_default(self, test_config_path, name):
        """Test that every named tolerance resolves to a positive float."""
        config = ConfigManager(test_config_path)
        assert 0 < config.get_tolerance(name) < 1

    def test_invalid_values_fall_back(self, test_config_path, caplog):
        """Test that typed accessors replace unusable values by defaults."""
        with open(test_config_path, 'w', encoding='utf-8') as f:
            json.dump({"tolerances": {"frame": -1}, "iterations": {"jacobi_sweeps": "many"},
                       "output": {"significant_digits": 40}}, f)
        config = ConfigManager(test_config_path)
        with caplog.at_level(logging.WARNING, logger="src.core.config_manager"):
            assert config.get_tolerance("frame") == 1e-10
        assert config.get_iteration_cap("jacobi_sweeps") == 40
        assert config.get_significant_digits() == 17
        assert "Invalid tolerances.frame" in caplog.text

    def test_non_object_file_ignored(self, test_config_path):
        """Test that a JSON file holding a list is ignored."""
        with open(test_config_path, 'w', encoding='utf-8') as f:
            json.dump([1, 2, 3], f)
        assert ConfigManager(test_config_path).get_default_trials() == 100

    def test_set_without_persist_skips_save(self, test_config_path, mocker):
        """Test that persist=False never touches the file."""
        save = mocker.patch.object(ConfigManager, '_save_config')
        config = ConfigManager(test_config_path)
        config.set("random.default_trials", 7, persist=False)
        save.assert_not_called()
        config.set("random.default_trials", 8)
        save.assert_called_once()

"""
Configuration Manager for the Gabor toolkit.

Settings live in a JSON file grouped into sections (tolerances, iterations,
random, output, logging). Values missing from the file fall back to the
constants in ``src/utils/constants.py``; values of the wrong kind are
reported and replaced by their defaults when read.
"""

import copy
import json
import logging
import os
from typing import Any, Dict, Optional, Tuple

from ..gabor.numerics import SolverSettings
from ..utils.constants import (
    FRAME_TOLERANCE, WEXLER_RAZ_TOLERANCE, IDENTITY_CHECK_TOLERANCE, CG_TOLERANCE,
    JACOBI_OFFDIAG_THRESHOLD, CG_ITERATION_FACTOR, JACOBI_MAX_SWEEPS,
    DEFAULT_SEED, DEFAULT_TRIALS, SIGNIFICANT_DIGITS, DEFAULT_LOG_LEVEL
)

logger = logging.getLogger(__name__)

DEFAULT_CONFIG: Dict[str, Dict[str, Any]] = {
    "tolerances": {
        "frame": FRAME_TOLERANCE,
        "wexler_raz": WEXLER_RAZ_TOLERANCE,
        "identity_check": IDENTITY_CHECK_TOLERANCE,
        "cg": CG_TOLERANCE,
        "jacobi_offdiag": JACOBI_OFFDIAG_THRESHOLD
    },
    "iterations": {
        "cg_factor": CG_ITERATION_FACTOR,
        "jacobi_sweeps": JACOBI_MAX_SWEEPS
    },
    "random": {
        "default_seed": DEFAULT_SEED,
        "default_trials": DEFAULT_TRIALS
    },
    "output": {
        "significant_digits": SIGNIFICANT_DIGITS
    },
    "logging": {
        "level": DEFAULT_LOG_LEVEL
    }
}


def _read_json(filename: str) -> Optional[Dict[str, Any]]:
    try:
        with open(filename, 'r', encoding='utf-8') as f:
            data = json.load(f)
    except (OSError, ValueError) as e:
        logger.warning(f"Cannot read configuration {filename}: {e}")
        return None
    if not isinstance(data, dict):
        logger.warning(f"Configuration {filename} is not a JSON object; ignored")
        return None
    return data


def _write_json(filename: str, data: Dict[str, Any]) -> bool:
    try:
        with open(filename, 'w', encoding='utf-8') as f:
            json.dump(data, f, indent=2, ensure_ascii=False)
        return True
    except OSError as e:
        logger.warning(f"Cannot write configuration {filename}: {e}")
        return False


def _overlay(base: Dict[str, Any], overrides: Dict[str, Any]):
    """Copy overrides into base in place, descending into sections both sides define."""
    for key, value in overrides.items():
        current = base.get(key)
        if isinstance(current, dict) and isinstance(value, dict):
            _overlay(current, value)
        else:
            base[key] = value


class ConfigManager:
    """
    Toolkit settings backed by a JSON file.

    Keys use dot notation ('tolerances.frame'). The typed accessors validate
    what they return, so a hand-edited file with a negative tolerance or a
    non-integer cap degrades to the default with a warning.
    """

    def __init__(self, config_file: str = "config.json"):
        """
        Args:
            config_file (str): Path to the configuration file. A missing file
                means defaults only; nothing is written until a value is set.
        """
        self.config_file = config_file
        self.config = copy.deepcopy(DEFAULT_CONFIG)
        if os.path.exists(config_file):
            stored = _read_json(config_file)
            if stored is not None:
                _overlay(self.config, stored)

    def _save_config(self) -> bool:
        return _write_json(self.config_file, self.config)

    def _lookup(self, key: str) -> Tuple[bool, Any]:
        node: Any = self.config
        for part in key.split('.'):
            if not isinstance(node, dict) or part not in node:
                return False, None
            node = node[part]
        return True, node

    def get(self, key: str, default: Any = None) -> Any:
        """
        Get a value by dotted key.

        Args:
            key (str): Dotted key such as 'random.default_seed'.
            default (Any): Returned when the key is absent.
        Returns:
            Any: The stored value or default.
        """
        found, value = self._lookup(key)
        return value if found else default

    def set(self, key: str, value: Any, persist: bool = True):
        """
        Set a value by dotted key, creating missing sections.

        Args:
            key (str): Dotted key.
            value (Any): New value.
            persist (bool): Write the file after setting.
        """
        *sections, leaf = key.split('.')
        node = self.config
        for section in sections:
            node = node.setdefault(section, {})
        node[leaf] = value
        if persist:
            self._save_config()

    def _checked(self, section: str, name: str, kind, is_valid) -> Any:
        fallback = DEFAULT_CONFIG.get(section, {}).get(name)
        raw = self.get(f"{section}.{name}", fallback)
        try:
            value = kind(raw)
        except (TypeError, ValueError):
            value = None
        if value is None or not is_valid(value):
            logger.warning(f"Invalid {section}.{name}={raw!r}; using {fallback!r}")
            return fallback
        return value

    def get_tolerance(self, name: str) -> float:
        """
        Named tolerance under 'tolerances', e.g. 'frame' or 'wexler_raz'.

        Returns:
            float: A positive tolerance.
        """
        return self._checked("tolerances", name, float, lambda v: v > 0.0)

    def get_iteration_cap(self, name: str) -> int:
        """Named iteration cap under 'iterations', e.g. 'jacobi_sweeps'."""
        return self._checked("iterations", name, int, lambda v: v > 0)

    def get_default_seed(self) -> int:
        return self._checked("random", "default_seed", int, lambda v: v >= 0)

    def get_default_trials(self) -> int:
        return self._checked("random", "default_trials", int, lambda v: v > 0)

    def get_significant_digits(self) -> int:
        """Significant digits for reports and written signals (1 to 17)."""
        return self._checked("output", "significant_digits", int, lambda v: 1 <= v <= 17)

    def get_log_level(self) -> str:
        return str(self.get("logging.level", DEFAULT_LOG_LEVEL)).upper()

    def solver_settings(self) -> SolverSettings:
        """
        Solver tolerances and caps for the frame layer.

        Returns:
            SolverSettings: CG and Jacobi settings read through the typed accessors.
        """
        return SolverSettings(
            cg_tolerance=self.get_tolerance("cg"),
            cg_iteration_factor=self.get_iteration_cap("cg_factor"),
            jacobi_threshold=self.get_tolerance("jacobi_offdiag"),
            jacobi_max_sweeps=self.get_iteration_cap("jacobi_sweeps"),
        )


config_manager = ConfigManager()

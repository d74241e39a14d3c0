#!/usr/bin/env python3
"""
Validation module for Gabor toolkit jobs.
Checks command-line job parameters and returns detailed error messages.
"""

import os
from typing import Tuple, Optional, Union, Dict, Any

from ..utils.constants import (
    MIN_TORUS_SIZE, MAX_TORUS_SIZE, WINDOW_KINDS, WINDOW_FILE_PREFIX,
    IDENTITY_NAMES, LOG_LEVELS
)


class ValidationError(Exception):
    """
    Custom exception for validation errors.

    Attributes:
        message (str): The error message.
        field (str): The field associated with the error (optional).
    """
    def __init__(self, message: str, field: str = None):
        self.message = message
        self.field = field
        super().__init__(self.message)


class JobValidator:
    """
    Validator for toolkit jobs.

    Provides static methods to validate every parameter a CLI job accepts.
    Each check returns (is_valid, error_message).
    """

    @staticmethod
    def validate_torus_size(n: Union[str, int]) -> Tuple[bool, Optional[str]]:
        """
        Validate the modulus N.

        Args:
            n (Union[str, int]): Modulus to validate

        Returns:
            Tuple of (is_valid, error_message)
        """
        try:
            if isinstance(n, str):
                n = int(n.strip())
        except (ValueError, AttributeError):
            return False, "N must be a whole number"

        if isinstance(n, bool) or not isinstance(n, int):
            return False, "N must be a whole number"

        if n < MIN_TORUS_SIZE:
            return False, f"N must be at least {MIN_TORUS_SIZE}"

        if n > MAX_TORUS_SIZE:
            return False, f"N cannot exceed {MAX_TORUS_SIZE}"

        return True, None

    @staticmethod
    def validate_lattice_spec(spec: str, n: int) -> Tuple[bool, Optional[str]]:
        """
        Validate a lattice spec string against the modulus.

        Args:
            spec (str): Lattice spec such as 'sep:2,2' or 'gen:(1,1)'
            n (int): Modulus the lattice lives in

        Returns:
            Tuple of (is_valid, error_message)
        """
        from ..gabor.exceptions import GaborError
        from ..gabor.lattice import check_lattice_spec, parse_lattice_spec

        if spec is None or not spec.strip():
            return False, "Lattice spec is required"

        try:
            check_lattice_spec(parse_lattice_spec(spec), n)
        except GaborError as e:
            return False, e.message
        except ValidationError as e:
            return False, e.message

        return True, None

    @staticmethod
    def validate_window_spec(spec: str) -> Tuple[bool, Optional[str]]:
        """
        Validate a window spec.

        Args:
            spec (str): One of the built-in window kinds or 'file:<path>'

        Returns:
            Tuple of (is_valid, error_message)
        """
        if not spec or not spec.strip():
            return False, "Window spec is required"

        spec = spec.strip()

        if spec.startswith(WINDOW_FILE_PREFIX):
            path = spec[len(WINDOW_FILE_PREFIX):]
            if not path:
                return False, "Window file path is empty"
            if not os.path.isfile(path):
                return False, f"Window file not found: {path}"
            return True, None

        if spec not in WINDOW_KINDS:
            return False, f"Invalid window. Must be one of: {', '.join(WINDOW_KINDS)} or {WINDOW_FILE_PREFIX}<path>"

        return True, None

    @staticmethod
    def validate_trials(trials: Union[str, int]) -> Tuple[bool, Optional[str]]:
        """
        Validate the number of random trials.

        Args:
            trials (Union[str, int]): Trial count to validate

        Returns:
            Tuple of (is_valid, error_message)
        """
        try:
            if isinstance(trials, str):
                trials = int(trials.strip())
        except (ValueError, AttributeError):
            return False, "Trials must be a number"

        if isinstance(trials, bool) or not isinstance(trials, int):
            return False, "Trials must be a whole number"

        if trials <= 0:
            return False, "Trials must be greater than 0"

        return True, None

    @staticmethod
    def validate_seed(seed: Union[str, int]) -> Tuple[bool, Optional[str]]:
        """
        Validate a PRNG seed.

        Args:
            seed (Union[str, int]): Seed to validate

        Returns:
            Tuple of (is_valid, error_message)
        """
        try:
            if isinstance(seed, str):
                seed = int(seed.strip())
        except (ValueError, AttributeError):
            return False, "Seed must be a number"

        if isinstance(seed, bool) or not isinstance(seed, int):
            return False, "Seed must be a whole number"

        if seed < 0:
            return False, "Seed cannot be negative"

        return True, None

    @staticmethod
    def validate_tolerance(tol: Union[str, float]) -> Tuple[bool, Optional[str]]:
        """
        Validate a numerical tolerance.

        Args:
            tol (Union[str, float]): Tolerance to validate

        Returns:
            Tuple of (is_valid, error_message)
        """
        try:
            tol = float(tol)
        except (TypeError, ValueError):
            return False, "Tolerance must be a number"

        if not tol > 0 or tol != tol:
            return False, "Tolerance must be positive"

        if tol >= 1:
            return False, "Tolerance must be below 1"

        return True, None

    @staticmethod
    def validate_identity(identity: str) -> Tuple[bool, Optional[str]]:
        """
        Validate an identity-checker name.

        Args:
            identity (str): Identity name

        Returns:
            Tuple of (is_valid, error_message)
        """
        if not identity or not identity.strip():
            return False, "Identity name is required"

        if identity.strip() not in IDENTITY_NAMES:
            return False, f"Unknown identity. Must be one of: {', '.join(IDENTITY_NAMES)}"

        return True, None

    @staticmethod
    def validate_log_level(level: str) -> Tuple[bool, Optional[str]]:
        """Validate a logging level name."""
        if not level or level.upper() not in LOG_LEVELS:
            return False, f"Invalid log level. Must be one of: {', '.join(LOG_LEVELS)}"
        return True, None

    @staticmethod
    def validate_job_data(job_data: Dict[str, Any]) -> Tuple[bool, Optional[str], Dict[str, Any]]:
        """
        Validate complete job data.

        Keys that are absent are skipped; 'n' is checked first because the
        lattice check depends on it.

        Args:
            job_data (Dict[str, Any]): Job parameter dictionary to validate

        Returns:
            Tuple of (is_valid, error_message, cleaned_data)
        """
        cleaned_data = {}
        errors = []

        n_valid = False
        if 'n' in job_data:
            n_valid, n_error = JobValidator.validate_torus_size(job_data['n'])
            if not n_valid:
                errors.append(f"N: {n_error}")
            else:
                n = job_data['n']
                cleaned_data['n'] = int(n.strip()) if isinstance(n, str) else n

        if 'lattice' in job_data:
            if not n_valid:
                errors.append("Lattice: cannot be checked without a valid N")
            else:
                lattice_valid, lattice_error = JobValidator.validate_lattice_spec(job_data['lattice'], cleaned_data['n'])
                if not lattice_valid:
                    errors.append(f"Lattice: {lattice_error}")
                else:
                    cleaned_data['lattice'] = job_data['lattice'].strip()

        for field, validator in [
            ('window', JobValidator.validate_window_spec),
            ('trials', JobValidator.validate_trials),
            ('seed', JobValidator.validate_seed),
            ('tol', JobValidator.validate_tolerance),
            ('identity', JobValidator.validate_identity),
        ]:
            if field not in job_data or job_data[field] is None:
                continue
            value = job_data[field]
            is_valid, error_msg = validator(value)
            if not is_valid:
                errors.append(f"{field.replace('_', ' ').title()}: {error_msg}")
            else:
                cleaned_data[field] = value.strip() if isinstance(value, str) else value

        if errors:
            return False, "; ".join(errors), cleaned_data

        return True, None, cleaned_data

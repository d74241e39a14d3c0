"""
Helper functions for the Gabor toolkit: signal files, CSV and PGM export,
window construction from CLI specs and seeded random inputs.
"""

import csv
import logging
from typing import List, Optional

import numpy as np
from PIL import Image

from .constants import (
    PGM_MAX_VALUE, SIGNAL_HEADER_PREFIX, SIGNIFICANT_DIGITS, WINDOW_FILE_PREFIX, WINDOW_KINDS
)
from ..core.validation import ValidationError

logger = logging.getLogger(__name__)


def format_float(value: float, digits: int = SIGNIFICANT_DIGITS) -> str:
    """
    Format a real number with a fixed count of significant digits.

    Args:
        value (float): Number to format.
        digits (int): Significant digits.

    Returns:
        str: Text such as '0.50000000000000000' style '%.17g' output.
    """
    return f"{float(value):.{digits}g}"


def format_value(value, digits: int = SIGNIFICANT_DIGITS) -> str:
    """
    Format a report value: booleans lower-case, floats by significant digits.

    Args:
        value: bool, int, float, Fraction or str.
        digits (int): Significant digits for floats.

    Returns:
        str: Report text.
    """
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format_float(value, digits)
    return str(value)


def write_signal(filename: str, signal, digits: int = SIGNIFICANT_DIGITS):
    """
    Write a complex signal as '# N=<n>' followed by one 're,im' line per sample.

    Args:
        filename (str): Output path.
        signal: Complex vector.
        digits (int): Significant digits per component.
    """
    signal = np.asarray(signal, dtype=np.complex128)
    lines = [f"{SIGNAL_HEADER_PREFIX}{signal.shape[0]}"]
    for value in signal:
        lines.append(f"{format_float(value.real, digits)},{format_float(value.imag, digits)}")
    with open(filename, 'w', encoding='utf-8', newline='\n') as f:
        f.write("\n".join(lines) + "\n")
    logger.info(f"Wrote signal of length {signal.shape[0]} to {filename}")


def read_signal(filename: str, expected_n: Optional[int] = None) -> np.ndarray:
    """
    Read a signal file written by write_signal.

    Args:
        filename (str): Input path.
        expected_n (Optional[int]): Length the caller requires.

    Returns:
        np.ndarray: Complex vector.

    Raises:
        ValidationError: If the file is missing or malformed.
    """
    try:
        with open(filename, 'r', encoding='utf-8') as f:
            lines = [line.strip() for line in f if line.strip()]
    except OSError as e:
        raise ValidationError(f"Cannot read signal file {filename}: {e}", "signal")

    if not lines or not lines[0].startswith(SIGNAL_HEADER_PREFIX):
        raise ValidationError(f"Signal file must start with '{SIGNAL_HEADER_PREFIX}<int>'", "signal")
    try:
        n = int(lines[0][len(SIGNAL_HEADER_PREFIX):])
    except ValueError:
        raise ValidationError("Signal header length is not an integer", "signal")

    body = lines[1:]
    if len(body) != n:
        raise ValidationError(f"Signal header says N={n} but file has {len(body)} samples", "signal")
    if expected_n is not None and n != expected_n:
        raise ValidationError(f"Signal has N={n}, expected {expected_n}", "signal")

    values = np.zeros(n, dtype=np.complex128)
    for row_num, line in enumerate(body, start=2):
        parts = line.split(',')
        if len(parts) != 2:
            raise ValidationError(f"Line {row_num}: expected 're,im'", "signal")
        try:
            values[row_num - 2] = complex(float(parts[0]), float(parts[1]))
        except ValueError:
            raise ValidationError(f"Line {row_num}: not a number pair", "signal")
    return values


def export_magnitude_csv(filename: str, array, digits: int = SIGNIFICANT_DIGITS) -> bool:
    """
    Export a real 2-D array to CSV, one row per first index.

    Args:
        filename (str): Output path.
        array: Real 2-D array.
        digits (int): Significant digits.

    Returns:
        bool: True if successful, False otherwise.
    """
    try:
        with open(filename, 'w', newline='', encoding='utf-8') as csvfile:
            writer = csv.writer(csvfile, lineterminator='\n')
            for row in np.asarray(array, dtype=np.float64):
                writer.writerow([format_float(v, digits) for v in row])
        return True
    except OSError as e:
        logger.error(f"Cannot write CSV {filename}: {e}")
        return False


def import_magnitude_csv(filename: str) -> np.ndarray:
    """
    Read a CSV written by export_magnitude_csv.

    Raises:
        ValidationError: If rows have unequal length or hold non-numbers.
    """
    rows: List[List[float]] = []
    with open(filename, 'r', newline='', encoding='utf-8') as csvfile:
        for row_num, row in enumerate(csv.reader(csvfile), start=1):
            try:
                rows.append([float(v) for v in row])
            except ValueError:
                raise ValidationError(f"Row {row_num}: not numeric", "csv")
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise ValidationError("CSV rows have unequal length", "csv")
    return np.array(rows, dtype=np.float64)


def export_pgm(filename: str, array):
    """
    Write a non-negative 2-D array as an 8-bit greyscale PGM scaled to its maximum.

    An all-zero array gives an all-black image.
    """
    array = np.asarray(array, dtype=np.float64)
    peak = float(array.max()) if array.size else 0.0
    if peak > 0.0:
        pixels = np.rint(array / peak * PGM_MAX_VALUE)
    else:
        pixels = np.zeros_like(array)
    Image.fromarray(np.clip(pixels, 0, PGM_MAX_VALUE).astype(np.uint8)).save(filename, format="PPM")


def build_window(spec: str, n: int) -> np.ndarray:
    """
    Build a window from a CLI spec.

    Args:
        spec (str): 'gauss', 'box', 'delta' or 'file:<path>'.
        n (int): Signal length.

    Returns:
        np.ndarray: Complex window of length n.

    Raises:
        ValidationError: If the spec is unknown or the file is unusable.
    """
    from ..gabor.tf_transforms import box_window, delta_window, periodized_gaussian

    spec = spec.strip()
    if spec.startswith(WINDOW_FILE_PREFIX):
        return read_signal(spec[len(WINDOW_FILE_PREFIX):], expected_n=n)
    builders = {'gauss': periodized_gaussian, 'box': box_window, 'delta': delta_window}
    if spec not in builders:
        raise ValidationError(f"Unknown window '{spec}'. Must be one of: {', '.join(WINDOW_KINDS)}", "window")
    return builders[spec](n)


def trial_rng(seed: int, index: int) -> np.random.Generator:
    """Independent generator for trial ``index`` of a run seeded with ``seed``."""
    return np.random.default_rng(seed + index)


def random_signal(rng: np.random.Generator, n: int) -> np.ndarray:
    """Complex Gaussian vector with unit expected energy per sample."""
    return (rng.standard_normal(n) + 1j * rng.standard_normal(n)) / np.sqrt(2.0)

"""
Unit tests for helper functions.
"""

import os
from fractions import Fraction

import numpy as np
import pytest
from PIL import Image

from src.core.validation import ValidationError
from src.utils.helpers import (
    build_window, export_magnitude_csv, export_pgm, format_float, format_value, import_magnitude_csv,
    random_signal, read_signal, trial_rng, write_signal
)


class TestFormatting:
    """Test report formatting."""

    def test_format_float(self):
        assert format_float(0.5) == "0.5"
        assert format_float(1.0) == "1"
        assert format_float(2.0 / 3.0) == "0.66666666666666663"
        assert format_float(float('inf')) == "inf"

    def test_format_float_digits(self):
        assert format_float(2.0 / 3.0, 4) == "0.6667"

    def test_format_value(self):
        assert format_value(True) == "true"
        assert format_value(False) == "false"
        assert format_value(16) == "16"
        assert format_value(Fraction(1, 2)) == "1/2"
        assert format_value("(0,0) (4,4)") == "(0,0) (4,4)"
        assert format_value(0.25) == "0.25"


class TestSignalFiles:
    """Test the signal text format."""

    def test_write_read(self, temp_dir, random_signals):
        path = os.path.join(temp_dir, "signal.txt")
        f = random_signals(6)
        write_signal(path, f)
        np.testing.assert_array_equal(read_signal(path, expected_n=6), f)

    def test_layout(self, temp_dir):
        path = os.path.join(temp_dir, "signal.txt")
        write_signal(path, np.array([1.0, 0.5j]))
        with open(path, 'r', encoding='utf-8') as f:
            assert f.read() == "# N=2\n1,0\n0,0.5\n"

    def test_missing_file(self, temp_dir):
        with pytest.raises(ValidationError) as exc_info:
            read_signal(os.path.join(temp_dir, "absent.txt"))
        assert exc_info.value.field == "signal"

    @pytest.mark.parametrize("content", [
        "1,0\n0,0\n",
        "# N=two\n1,0\n0,0\n",
        "# N=3\n1,0\n0,0\n",
        "# N=2\n1,0\n0\n",
        "# N=2\n1,0\nx,0\n",
    ])
    def test_malformed(self, temp_dir, content):
        path = os.path.join(temp_dir, "bad.txt")
        with open(path, 'w', encoding='utf-8') as f:
            f.write(content)
        with pytest.raises(ValidationError):
            read_signal(path)

    def test_wrong_length(self, temp_dir):
        path = os.path.join(temp_dir, "signal.txt")
        write_signal(path, np.ones(4))
        with pytest.raises(ValidationError) as exc_info:
            read_signal(path, expected_n=8)
        assert "expected 8" in str(exc_info.value)


class TestExports:
    """Test CSV and PGM export."""

    def test_csv(self, temp_dir):
        path = os.path.join(temp_dir, "m.csv")
        array = np.array([[1.0, 0.0], [0.25, 2.0]])
        assert export_magnitude_csv(path, array) is True
        with open(path, 'r', encoding='utf-8') as f:
            assert f.read() == "1,0\n0.25,2\n"
        np.testing.assert_array_equal(import_magnitude_csv(path), array)

    def test_csv_unwritable(self, temp_dir):
        assert export_magnitude_csv(os.path.join(temp_dir, "no", "such", "dir.csv"), np.ones((2, 2))) is False

    def test_csv_ragged(self, temp_dir):
        path = os.path.join(temp_dir, "ragged.csv")
        with open(path, 'w', encoding='utf-8') as f:
            f.write("1,2\n3\n")
        with pytest.raises(ValidationError):
            import_magnitude_csv(path)

    def test_pgm_scaled_to_peak(self, temp_dir):
        path = os.path.join(temp_dir, "m.pgm")
        export_pgm(path, np.array([[0.0, 1.0], [2.0, 4.0]]))
        with Image.open(path) as image:
            assert image.mode == "L"
            assert image.size == (2, 2)
            pixels = np.array(image)
        np.testing.assert_array_equal(pixels, [[0, 64], [128, 255]])

    def test_pgm_of_zeros(self, temp_dir):
        path = os.path.join(temp_dir, "zero.pgm")
        export_pgm(path, np.zeros((3, 3)))
        with Image.open(path) as image:
            assert np.array(image).max() == 0


class TestWindowsAndRandomness:
    """Test window specs and seeded trial generators."""

    @pytest.mark.parametrize("spec", ["gauss", "box", "delta", " gauss "])
    def test_builtin_windows(self, spec):
        g = build_window(spec, 8)
        assert g.shape == (8,)
        assert np.linalg.norm(g) == pytest.approx(1.0)

    def test_file_window(self, temp_dir):
        path = os.path.join(temp_dir, "w.txt")
        write_signal(path, np.arange(4) + 1j)
        np.testing.assert_array_equal(build_window(f"file:{path}", 4), np.arange(4) + 1j)

    def test_unknown_window(self):
        with pytest.raises(ValidationError) as exc_info:
            build_window("hann", 8)
        assert exc_info.value.field == "window"

    def test_trial_rng_is_deterministic(self):
        a = random_signal(trial_rng(7, 3), 5)
        b = random_signal(trial_rng(7, 3), 5)
        c = random_signal(trial_rng(7, 4), 5)
        np.testing.assert_array_equal(a, b)
        assert not np.allclose(a, c)

    def test_random_signal_shape(self):
        f = random_signal(trial_rng(0, 0), 6)
        assert f.shape == (6,)
        assert f.dtype == np.complex128

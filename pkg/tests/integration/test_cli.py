"""
Integration tests for the command-line verbs.

Each test runs main() in-process and inspects the 'key: value' report on
stdout and the exit code.
"""

import json
import os

import numpy as np
import pytest
from PIL import Image

from src.cli.commands import main
from src.gabor import gabor_frames, periodized_gaussian, stft
from src.utils.helpers import import_magnitude_csv, read_signal, write_signal

GOLDEN_DIR = os.path.join(os.path.dirname(os.path.dirname(__file__)), "fixtures", "golden")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    report = {}
    for line in out.splitlines():
        key, _, value = line.partition(": ")
        report[key] = value
    return code, report, out


class TestAdjointCommand:
    """Test the adjoint verb."""

    def test_separable(self, capsys):
        code, report, _ = run(capsys, "adjoint", "--n", "8", "--lattice", "sep:2,2")
        assert code == 0
        assert report["lattice_size"] == "16"
        assert report["adjoint"] == "(0,0) (0,4) (4,0) (4,4)"
        assert report["adjoint_size"] == "4"
        assert report["product"] == "64"
        assert report["isotropic"] == "false"

    def test_maximal_isotropic(self, capsys):
        code, report, _ = run(capsys, "adjoint", "--n", "9", "--lattice", "sep:3,3")
        assert code == 0
        assert report["isotropic"] == "true"
        assert report["lattice"] == report["adjoint"]

    def test_trivial_lattice(self, capsys):
        code, report, _ = run(capsys, "adjoint", "--n", "4", "--lattice", "gen:")
        assert code == 0
        assert report["lattice"] == "(0,0)"
        assert report["adjoint_size"] == "16"
        assert report["isotropic"] == "true"

    def test_report_order(self, capsys):
        _, report, _ = run(capsys, "adjoint", "--n", "6", "--lattice", "gen:(1,1)")
        assert list(report) == ["n", "lattice", "lattice_size", "adjoint", "adjoint_size", "product", "isotropic"]

    def test_full_lattice_at_largest_size(self, capsys):
        code, report, _ = run(capsys, "adjoint", "--n", "256", "--lattice", "sep:1,1")
        assert code == 0
        assert report["lattice_size"] == "65536"
        assert report["adjoint"] == "(0,0)"
        assert report["isotropic"] == "false"


class TestFrameCommands:
    """Test framebounds, dual and tight."""

    def test_full_lattice_bounds(self, capsys):
        code, report, _ = run(capsys, "framebounds", "--n", "4", "--lattice", "sep:1,1")
        assert code == 0
        assert float(report["lower_bound"]) == pytest.approx(4.0)
        assert float(report["upper_bound"]) == pytest.approx(4.0)
        assert report["is_frame"] == "true"
        assert report["redundancy"] == "4"

    def test_not_a_frame(self, capsys):
        code, report, _ = run(capsys, "framebounds", "--n", "8", "--lattice", "sep:4,4")
        assert code == 3
        assert report["is_frame"] == "false"
        assert report["redundancy"] == "1/2"
        assert report["condition_number"] == "inf"

    def test_dual(self, capsys, temp_dir):
        out = os.path.join(temp_dir, "dual.txt")
        code, report, _ = run(capsys, "dual", "--n", "8", "--lattice", "sep:2,2", "--out", out)
        assert code == 0
        assert report["wexler_raz_passes"] == "true"
        assert float(report["wexler_raz_max_residual"]) < 1e-8
        assert read_signal(out, expected_n=8).shape == (8,)

    def test_dual_not_a_frame(self, capsys, temp_dir):
        out = os.path.join(temp_dir, "dual.txt")
        code, report, _ = run(capsys, "dual", "--n", "8", "--lattice", "sep:4,4", "--out", out)
        assert code == 3
        assert report["is_frame"] == "false"
        assert not os.path.exists(out)

    def test_tight(self, capsys, temp_dir):
        out = os.path.join(temp_dir, "tight.txt")
        code, report, _ = run(capsys, "tight", "--n", "8", "--lattice", "sep:2,2", "--window", "box", "--out", out)
        assert code == 0
        assert report["wexler_raz_passes"] == "true"
        assert report["is_tight"] == "true"
        assert float(report["tight_frame_deviation"]) < 1e-8
        h = read_signal(out, expected_n=8)
        assert np.vdot(h, h).real == pytest.approx(0.5)

    def test_tight_report_order(self, capsys):
        _, report, _ = run(capsys, "tight", "--n", "12", "--lattice", "sep:2,2")
        assert list(report) == ["n", "lattice", "window", "lower_bound", "upper_bound", "is_frame",
                                "redundancy", "condition_number", "tight_frame_deviation", "is_tight",
                                "wexler_raz_max_residual", "wexler_raz_passes"]

    def test_solver_settings_come_from_config(self, capsys, temp_dir, mocker):
        config_path = os.path.join(temp_dir, "config.json")
        with open(config_path, 'w', encoding='utf-8') as f:
            json.dump({"tolerances": {"jacobi_offdiag": 1e-11, "cg": 1e-9},
                       "iterations": {"jacobi_sweeps": 30, "cg_factor": 3}}, f)
        jacobi = mocker.spy(gabor_frames, "jacobi_eig")
        cg = mocker.spy(gabor_frames, "cg_solve")
        code, _, _ = run(capsys, "dual", "--n", "12", "--lattice", "sep:2,2", "--config", config_path)
        assert code == 0
        assert jacobi.call_args.args[1:] == (1e-11, 30)
        assert cg.call_args.args[2:] == (1e-9, 36)

    def test_cg_cap_from_config_is_enforced(self, capsys, temp_dir):
        config_path = os.path.join(temp_dir, "config.json")
        with open(config_path, 'w', encoding='utf-8') as f:
            json.dump({"iterations": {"cg_factor": 1}, "tolerances": {"cg": 1e-300}}, f)
        code, _, _ = run(capsys, "dual", "--n", "12", "--lattice", "sep:2,2", "--config", config_path)
        assert code == 1

    def test_dual_oblique_twelve(self, capsys):
        code, report, _ = run(capsys, "dual", "--n", "12", "--lattice", "sep:2,2")
        assert code == 0
        assert report["wexler_raz_passes"] == "true"

    def test_out_files_are_reproducible(self, capsys, temp_dir):
        paths = [os.path.join(temp_dir, f"tight{i}.txt") for i in range(2)]
        for path in paths:
            run(capsys, "tight", "--n", "12", "--lattice", "sep:2,3", "--out", path)
        with open(paths[0], "rb") as first, open(paths[1], "rb") as second:
            assert first.read() == second.read()


class TestGoldenReports:
    """Compare reports byte-for-byte with the files under tests/fixtures/golden."""

    @pytest.mark.parametrize("name, digits, argv", [
        ("adjoint_n8_sep2_2", 17, ["adjoint", "--n", "8", "--lattice", "sep:2,2"]),
        ("framebounds_n4_sep1_1_delta", 17,
         ["framebounds", "--n", "4", "--lattice", "sep:1,1", "--window", "delta"]),
        ("framebounds_n12_sep2_2_gauss", 5,
         ["framebounds", "--n", "12", "--lattice", "sep:2,2", "--window", "gauss"]),
    ])
    def test_report_matches_golden(self, capsys, temp_dir, name, digits, argv):
        config_path = os.path.join(temp_dir, "config.json")
        with open(config_path, 'w', encoding='utf-8') as f:
            json.dump({"output": {"significant_digits": digits}}, f)
        code, _, out = run(capsys, *argv, "--config", config_path)
        assert code == 0
        with open(os.path.join(GOLDEN_DIR, f"{name}.txt"), "rb") as golden:
            assert out.encode("utf-8") == golden.read()


class TestCheckCommand:
    """Test the identity checkers."""

    @pytest.mark.parametrize("identity", ["figa", "janssen", "poisson", "associativity"])
    def test_random_identities_pass(self, capsys, identity):
        code, report, _ = run(capsys, "check", identity, "--n", "8", "--lattice", "sep:2,2",
                              "--trials", "5", "--seed", "3")
        assert code == 0
        assert report["passes"] == "true"
        assert report["trials"] == "5"
        assert float(report["max_residual"]) < 1e-8

    def test_oblique_lattice(self, capsys):
        code, report, _ = run(capsys, "check", "figa", "--n", "12", "--lattice", "gen:(2,3);(4,0)",
                              "--trials", "3")
        assert code == 0
        assert report["seed"] == "0"

    def test_wexler_raz_canonical(self, capsys):
        code, report, _ = run(capsys, "check", "wexler-raz", "--n", "8", "--lattice", "sep:2,2")
        assert code == 0
        assert report["dual_window"] == "canonical"

    def test_wexler_raz_zero_dual_fails(self, capsys):
        code, report, _ = run(capsys, "check", "wexler-raz", "--n", "8", "--lattice", "sep:2,2",
                              "--dual-window", "zero")
        assert code == 1
        assert report["passes"] == "false"
        assert float(report["max_residual"]) == pytest.approx(1.0)

    def test_canonical_dual_of_non_frame(self, capsys):
        code, report, _ = run(capsys, "check", "wexler-raz", "--n", "8", "--lattice", "sep:4,4")
        assert code == 3
        assert list(report)[:3] == ["n", "lattice", "window"]
        assert report["n"] == "8"
        assert report["lattice"] == "sep:4,4"
        assert report["is_frame"] == "false"

    def test_janssen_on_oblique_lattice(self, capsys):
        code, report, _ = run(capsys, "check", "janssen", "--n", "6", "--lattice", "gen:(1,1)",
                              "--trials", "100", "--seed", "0")
        assert code == 0
        assert report["passes"] == "true"

    def test_default_trial_count(self, capsys):
        code, report, _ = run(capsys, "check", "figa", "--n", "8", "--lattice", "sep:2,4")
        assert code == 0
        assert report["trials"] == "100"
        assert report["seed"] == "0"

    def test_same_seed_same_output(self, capsys):
        args = ("check", "figa", "--n", "6", "--lattice", "gen:(1,1)", "--trials", "4", "--seed", "11")
        first = run(capsys, *args)[2]
        second = run(capsys, *args)[2]
        assert first == second

    def test_tolerance_flag(self, capsys):
        code, report, _ = run(capsys, "check", "poisson", "--n", "4", "--lattice", "sep:2,2",
                              "--trials", "2", "--tol", "1e-6")
        assert code == 0
        assert float(report["tolerance"]) == 1e-6

    def test_tolerance_must_be_positive(self, capsys):
        code, _, _ = run(capsys, "check", "poisson", "--n", "4", "--lattice", "sep:2,2", "--tol", "0")
        assert code == 2

    def test_config_file_sets_trials(self, capsys, temp_dir):
        config_path = os.path.join(temp_dir, "config.json")
        with open(config_path, 'w', encoding='utf-8') as f:
            json.dump({"random": {"default_trials": 2}}, f)
        code, report, _ = run(capsys, "check", "janssen", "--n", "4", "--lattice", "sep:1,2",
                              "--config", config_path)
        assert code == 0
        assert report["trials"] == "2"


class TestUsageErrors:
    """Test exit code 2 for bad input."""

    def test_unknown_identity(self, capsys):
        code, _, _ = run(capsys, "check", "moyal", "--n", "8", "--lattice", "sep:2,2")
        assert code == 2

    def test_step_not_dividing_n(self, capsys):
        code, _, _ = run(capsys, "adjoint", "--n", "8", "--lattice", "sep:3,3")
        assert code == 2

    def test_missing_lattice(self, capsys):
        code, _, _ = run(capsys, "framebounds", "--n", "8")
        assert code == 2

    def test_unknown_window(self, capsys):
        code, _, _ = run(capsys, "framebounds", "--n", "8", "--lattice", "sep:2,2", "--window", "hann")
        assert code == 2

    def test_missing_n(self, capsys):
        code, _, _ = run(capsys, "adjoint", "--lattice", "sep:1,1")
        assert code == 2

    def test_unknown_verb(self, capsys):
        code, _, _ = run(capsys, "synthesize", "--n", "8")
        assert code == 2

    def test_help(self, capsys):
        code, _, out = run(capsys, "--help")
        assert code == 0
        assert "spectrogram" in out


class TestSpectrogramCommand:
    """Test spectrogram export."""

    def test_delta_delta(self, capsys, temp_dir):
        signal = os.path.join(temp_dir, "delta.txt")
        write_signal(signal, np.eye(6)[0])
        prefix = os.path.join(temp_dir, "spec")
        code, report, _ = run(capsys, "spectrogram", "--n", "6", "--window", "delta",
                              "--signal", signal, "--out", prefix)
        assert code == 0
        assert report["max_magnitude"] == "1"
        magnitude = import_magnitude_csv(f"{prefix}.csv")
        expected = np.zeros((6, 6))
        expected[0] = 1.0
        np.testing.assert_allclose(magnitude, expected, atol=1e-15)
        assert os.path.exists(f"{prefix}.pgm")

    def test_zero_signal(self, capsys, temp_dir):
        signal = os.path.join(temp_dir, "zero.txt")
        write_signal(signal, np.zeros(5))
        prefix = os.path.join(temp_dir, "zero")
        code, report, _ = run(capsys, "spectrogram", "--n", "5", "--signal", signal, "--out", prefix)
        assert code == 0
        assert report["max_magnitude"] == "0"
        with Image.open(f"{prefix}.pgm") as image:
            assert np.array(image).max() == 0

    def test_length_mismatch(self, capsys, temp_dir):
        signal = os.path.join(temp_dir, "short.txt")
        write_signal(signal, np.ones(4))
        code, _, _ = run(capsys, "spectrogram", "--n", "6", "--signal", signal,
                         "--out", os.path.join(temp_dir, "x"))
        assert code == 2

    def test_csv_matches_stft(self, capsys, temp_dir):
        rng = np.random.default_rng(8)
        f = rng.standard_normal(8) + 1j * rng.standard_normal(8)
        signal = os.path.join(temp_dir, "noise.txt")
        write_signal(signal, f)
        prefix = os.path.join(temp_dir, "noise")
        code, _, _ = run(capsys, "spectrogram", "--n", "8", "--signal", signal, "--out", prefix)
        assert code == 0
        expected = stft(read_signal(signal), periodized_gaussian(8)).magnitude()
        np.testing.assert_array_equal(import_magnitude_csv(f"{prefix}.csv"), expected)

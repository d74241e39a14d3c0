"""
Command-line verbs for the Gabor toolkit.

Reports go to stdout as 'key: value' lines in a fixed order; logs go to
stderr. Exit codes: 0 success, 1 failed identity check, 2 usage or parse
error, 3 not a frame.
"""

import argparse
import logging
import sys
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from ..core.config_manager import ConfigManager, config_manager
from ..core.validation import JobValidator, ValidationError
from ..gabor.exceptions import DimensionError, GaborError, LatticeSpecError, NotAFrameError
from ..gabor.gabor_frames import (
    canonical_dual, frame_bounds, tight_frame_check, tight_window, wexler_raz_check
)
from ..gabor.hilbert_module import (
    ModulePair, associativity_residual, figa_check, janssen_coefficients, rank_one
)
from ..gabor.lattice import adjoint_lattice, enumerate_lattice, is_isotropic, parse_lattice_spec
from ..gabor.tf_transforms import PhaseFunction, poisson_sum, stft
from ..gabor.twisted_algebra import represent
from ..utils.constants import (
    DUAL_WINDOW_CHOICES, EXIT_CHECK_FAILED, EXIT_NOT_A_FRAME, EXIT_OK, EXIT_USAGE, IDENTITY_NAMES,
    LOG_LEVELS
)
from ..utils.helpers import (
    build_window, export_magnitude_csv, export_pgm, format_value, random_signal, read_signal,
    trial_rng, write_signal
)

logger = logging.getLogger(__name__)


@dataclass
class JobConfig:
    """
    Validated parameters of one CLI job.

    Attributes:
        n (int): Modulus N.
        lattice_spec (Optional[str]): Lattice spec string.
        window_spec (str): Window spec.
        params (Dict[str, Any]): Command-specific parameters.
    """
    n: int
    lattice_spec: Optional[str] = None
    window_spec: str = "gauss"
    params: Dict[str, Any] = field(default_factory=dict)


class Report:
    """Ordered 'key: value' report written to stdout."""

    def __init__(self, digits: int):
        self.digits = digits
        self.entries: List[Tuple[str, Any]] = []

    def add(self, key: str, value: Any):
        self.entries.append((key, value))

    def extend(self, values: Dict[str, Any]):
        for key, value in values.items():
            self.add(key, value)

    def render(self) -> str:
        return "".join(f"{key}: {format_value(value, self.digits)}\n" for key, value in self.entries)

    def emit(self):
        sys.stdout.write(self.render())
        sys.stdout.flush()


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, required=True, help="Modulus N of Z_N")
    common.add_argument("--lattice", help="Lattice spec: sep:a,b or gen:(x,w);...")
    common.add_argument("--window", default="gauss", help="Window: gauss, box, delta or file:<path>")
    common.add_argument("--seed", type=int, help="PRNG seed for random trials")
    common.add_argument("--trials", type=int, help="Number of random trials")
    common.add_argument("--out", help="Output file (or path prefix for spectrogram)")
    common.add_argument("--tol", type=float, help="Pass/fail tolerance")
    common.add_argument("--config", help="Configuration file")
    common.add_argument("--log-level", choices=LOG_LEVELS, help="Logging level for stderr")
    return common


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one subcommand per verb."""
    common = _common_parser()
    parser = argparse.ArgumentParser(prog="gabor_cli", description="Finite Gabor analysis on Z_N")
    subparsers = parser.add_subparsers(dest="command", required=True)

    subparsers.add_parser("adjoint", parents=[common], help="List a lattice and its adjoint")
    subparsers.add_parser("framebounds", parents=[common], help="Frame bounds of a Gabor system")
    subparsers.add_parser("dual", parents=[common], help="Canonical dual window")
    subparsers.add_parser("tight", parents=[common], help="Canonical tight window")

    check = subparsers.add_parser("check", parents=[common], help="Run an identity checker")
    check.add_argument("identity", help=f"One of: {', '.join(IDENTITY_NAMES)}")
    check.add_argument("--dual-window", default="canonical",
                       help=f"Dual for wexler-raz: {', '.join(DUAL_WINDOW_CHOICES)} or a window spec")

    spectrogram = subparsers.add_parser("spectrogram", parents=[common], help="Export |STFT| as CSV and PGM")
    spectrogram.add_argument("--signal", required=True, help="Signal file ('# N=<int>' then 're,im' lines)")

    return parser


def _configure_logging(args, config: ConfigManager):
    level = args.log_level or config.get_log_level()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), stream=sys.stderr,
                        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s", force=True)


def _job_from_args(args, config: ConfigManager) -> JobConfig:
    job_data = {'n': args.n, 'window': args.window}
    if args.command != "spectrogram":
        job_data['lattice'] = args.lattice if args.lattice is not None else ""
    if args.command == "check":
        job_data['identity'] = args.identity
        job_data['trials'] = args.trials if args.trials is not None else config.get_default_trials()
        job_data['seed'] = args.seed if args.seed is not None else config.get_default_seed()
    if args.tol is not None:
        job_data['tol'] = args.tol

    is_valid, error, cleaned = JobValidator.validate_job_data(job_data)
    if not is_valid:
        raise ValidationError(error)

    params = {k: v for k, v in cleaned.items() if k not in ('n', 'lattice', 'window')}
    return JobConfig(cleaned['n'], cleaned.get('lattice'), cleaned['window'], params)


def _module_pair(job: JobConfig) -> ModulePair:
    return ModulePair.from_lattice(enumerate_lattice(parse_lattice_spec(job.lattice_spec), job.n))


def cmd_adjoint(job: JobConfig, args, config: ConfigManager) -> int:
    """Print a lattice, its adjoint, the size product and the isotropy flag."""
    lattice = enumerate_lattice(parse_lattice_spec(job.lattice_spec), job.n)
    adjoint = adjoint_lattice(lattice)
    report = Report(config.get_significant_digits())
    report.add("n", job.n)
    report.add("lattice", lattice.listing())
    report.add("lattice_size", lattice.size)
    report.add("adjoint", adjoint.listing())
    report.add("adjoint_size", adjoint.size)
    report.add("product", lattice.size * adjoint.size)
    report.add("isotropic", is_isotropic(lattice, adjoint))
    report.emit()
    return EXIT_OK


def _frame_header(job: JobConfig, report: Report):
    report.add("n", job.n)
    report.add("lattice", job.lattice_spec)
    report.add("window", job.window_spec)


def cmd_framebounds(job: JobConfig, args, config: ConfigManager) -> int:
    """Print the frame report; exit 3 when the system is not a frame."""
    m = _module_pair(job)
    g = build_window(job.window_spec, job.n)
    frame = frame_bounds(g, m, config.get_tolerance("frame"), config.solver_settings())
    report = Report(config.get_significant_digits())
    _frame_header(job, report)
    report.extend(frame.as_dict())
    report.emit()
    return EXIT_OK if frame.is_frame else EXIT_NOT_A_FRAME


def _window_job(job: JobConfig, args, config: ConfigManager,
                make: Callable[[np.ndarray, ModulePair, Report], np.ndarray], self_dual: bool) -> int:
    m = _module_pair(job)
    g = build_window(job.window_spec, job.n)
    frame = frame_bounds(g, m, config.get_tolerance("frame"), config.solver_settings())
    report = Report(config.get_significant_digits())
    _frame_header(job, report)
    report.extend(frame.as_dict())
    if not frame.is_frame:
        report.emit()
        logger.error(f"Window {job.window_spec} over {job.lattice_spec} is not a frame")
        return EXIT_NOT_A_FRAME

    window = make(g, m, report)
    partner = window if self_dual else g
    wexler_raz = wexler_raz_check(partner, window, m, config.get_tolerance("wexler_raz"))
    report.add("wexler_raz_max_residual", wexler_raz.max_residual)
    report.add("wexler_raz_passes", wexler_raz.passes)
    if args.out:
        write_signal(args.out, window, config.get_significant_digits())
        report.add("output", args.out)
    report.emit()
    return EXIT_OK


def cmd_dual(job: JobConfig, args, config: ConfigManager) -> int:
    """Compute the canonical dual window and report its Wexler-Raz residual against g."""
    def make(g, m, report):
        return canonical_dual(g, m, config.get_tolerance("frame"), config.solver_settings())
    return _window_job(job, args, config, make, self_dual=False)


def cmd_tight(job: JobConfig, args, config: ConfigManager) -> int:
    """Compute the canonical tight window; it is its own dual, so it is checked against itself."""
    def make(g, m, report):
        h = tight_window(g, m, config.get_tolerance("frame"), config.solver_settings())
        tight = tight_frame_check(h, m, config.get_tolerance("wexler_raz"))
        report.add("tight_frame_deviation", tight.frame_deviation)
        report.add("is_tight", tight.is_tight)
        return h
    return _window_job(job, args, config, make, self_dual=True)


def _relative(lhs: complex, rhs: complex) -> float:
    return abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs))


def _figa_trial(rng, m: ModulePair) -> float:
    f1, g1, f2, g2 = (random_signal(rng, m.n) for _ in range(4))
    return _relative(*figa_check(f1, g1, f2, g2, m))


def _janssen_trial(rng, m: ModulePair) -> float:
    g, gamma = random_signal(rng, m.n), random_signal(rng, m.n)
    operator = rank_one(gamma, g, m)
    expansion = represent(janssen_coefficients(g, gamma, m))
    return float(np.max(np.abs(operator - expansion))) / max(1.0, float(np.max(np.abs(operator))))


def _poisson_trial(rng, m: ModulePair) -> float:
    values = rng.standard_normal((m.n, m.n)) + 1j * rng.standard_normal((m.n, m.n))
    return _relative(*poisson_sum(PhaseFunction(m.n, values), m.lattice))


def _associativity_trial(rng, m: ModulePair) -> float:
    f, g, h = (random_signal(rng, m.n) for _ in range(3))
    scale = max(1.0, float(np.linalg.norm(f) * np.linalg.norm(g) * np.linalg.norm(h)))
    return associativity_residual(f, g, h, m) / scale


TRIAL_CHECKS: Dict[str, Callable[[np.random.Generator, ModulePair], float]] = {
    'figa': _figa_trial,
    'janssen': _janssen_trial,
    'poisson': _poisson_trial,
    'associativity': _associativity_trial,
}


def _dual_window(spec: str, g: np.ndarray, m: ModulePair, config: ConfigManager) -> np.ndarray:
    if spec == "canonical":
        return canonical_dual(g, m, config.get_tolerance("frame"), config.solver_settings())
    if spec == "zero":
        return np.zeros(m.n, dtype=np.complex128)
    return build_window(spec, m.n)


def cmd_check(job: JobConfig, args, config: ConfigManager) -> int:
    """Run an identity checker; exit 0 iff every residual is below the tolerance."""
    m = _module_pair(job)
    identity = job.params['identity']
    tol = job.params.get('tol', config.get_tolerance("identity_check"))
    seed = job.params['seed']
    trials = job.params['trials']

    report = Report(config.get_significant_digits())
    report.add("identity", identity)
    report.add("n", job.n)
    report.add("lattice", job.lattice_spec)

    if identity == "wexler-raz":
        g = build_window(job.window_spec, job.n)
        gamma = _dual_window(args.dual_window.strip(), g, m, config)
        max_residual = wexler_raz_check(g, gamma, m, tol).max_residual
        report.add("window", job.window_spec)
        report.add("dual_window", args.dual_window.strip())
    else:
        check = TRIAL_CHECKS[identity]
        residuals = [check(trial_rng(seed, index), m) for index in range(trials)]
        max_residual = max(residuals)
        report.add("trials", trials)
        report.add("seed", seed)

    passes = max_residual < tol
    report.add("tolerance", float(tol))
    report.add("max_residual", float(max_residual))
    report.add("passes", passes)
    report.emit()
    if not passes:
        logger.error(f"Identity {identity} failed with residual {max_residual:.3e}")
    return EXIT_OK if passes else EXIT_CHECK_FAILED


def cmd_spectrogram(job: JobConfig, args, config: ConfigManager) -> int:
    """Write |STFT| of a signal file as CSV (row x, column w) and as a PGM image."""
    f = read_signal(args.signal, expected_n=job.n)
    g = build_window(job.window_spec, job.n)
    magnitude = stft(f, g).magnitude()
    prefix = args.out or "spectrogram"
    csv_path, pgm_path = f"{prefix}.csv", f"{prefix}.pgm"
    digits = config.get_significant_digits()
    if not export_magnitude_csv(csv_path, magnitude, digits):
        raise ValidationError(f"Cannot write {csv_path}", "out")
    export_pgm(pgm_path, magnitude)

    report = Report(digits)
    report.add("n", job.n)
    report.add("window", job.window_spec)
    report.add("max_magnitude", float(magnitude.max()))
    report.add("csv", csv_path)
    report.add("pgm", pgm_path)
    report.emit()
    return EXIT_OK


HANDLERS: Dict[str, Callable[[JobConfig, Any, ConfigManager], int]] = {
    'adjoint': cmd_adjoint,
    'framebounds': cmd_framebounds,
    'dual': cmd_dual,
    'tight': cmd_tight,
    'check': cmd_check,
    'spectrogram': cmd_spectrogram,
}


def main(argv: Optional[List[str]] = None) -> int:
    """
    Parse arguments, run one verb and return its exit code.

    Args:
        argv (Optional[List[str]]): Arguments without the program name; sys.argv[1:] by default.
    Returns:
        int: Process exit code.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    config = ConfigManager(args.config) if args.config else config_manager
    _configure_logging(args, config)

    job: Optional[JobConfig] = None
    try:
        job = _job_from_args(args, config)
        return HANDLERS[args.command](job, args, config)
    except (ValidationError, LatticeSpecError, DimensionError) as e:
        logger.error(f"Invalid input: {e}")
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE
    except NotAFrameError as e:
        report = Report(config.get_significant_digits())
        if job is not None:
            _frame_header(job, report)
        if e.report is not None:
            report.extend(e.report.as_dict())
        report.emit()
        logger.error(str(e))
        return EXIT_NOT_A_FRAME
    except GaborError as e:
        logger.error(f"Computation failed: {e}")
        sys.stderr.write(f"error: {e}\n")
        return EXIT_CHECK_FAILED

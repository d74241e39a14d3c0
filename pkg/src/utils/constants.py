"""
Constants and configuration defaults for the finite Gabor toolkit.
"""

# === PHASE SPACE CONSTANTS ===
MIN_TORUS_SIZE = 2
MAX_TORUS_SIZE = 256
UNITARITY_TOLERANCE = 1e-12

# === GAUSSIAN WINDOW CONSTANTS ===
GAUSSIAN_PERIODS = 3  # periodization terms k = -3..3

# === FRAME / DUALITY TOLERANCES ===
FRAME_TOLERANCE = 1e-10
WEXLER_RAZ_TOLERANCE = 1e-8
IDENTITY_CHECK_TOLERANCE = 1e-8
HERMITIAN_TOLERANCE = 1e-10
GRAM_TOLERANCE = 1e-12
INVERT_RESIDUAL_TOLERANCE = 1e-8

# === NUMERICAL KERNEL CONSTANTS ===
CG_TOLERANCE = 1e-12
CG_ITERATION_FACTOR = 10
CG_CURVATURE_GUARD = -1e-12
JACOBI_OFFDIAG_THRESHOLD = 1e-13
JACOBI_MAX_SWEEPS = 40
POWER_TOLERANCE = 1e-13
POWER_MAX_ITERATIONS = 5000
LU_PIVOT_THRESHOLD = 1e-13
LU_RESIDUAL_TOLERANCE = 1e-10
LU_GROWTH_WARNING = 1e6
SQRT_EIGENVALUE_FLOOR = 1e-12
POWER_ITERATION_SEED = 0x5EED
HERMITIAN_SAMPLES = 3

# === RANDOM TRIAL CONSTANTS ===
DEFAULT_SEED = 0
DEFAULT_TRIALS = 100

# === FILE FORMAT CONSTANTS ===
SIGNIFICANT_DIGITS = 17
SIGNAL_HEADER_PREFIX = "# N="
PGM_MAX_VALUE = 255

# === CLI CONSTANTS ===
EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_NOT_A_FRAME = 3

WINDOW_KINDS = ["gauss", "box", "delta"]
WINDOW_FILE_PREFIX = "file:"
DUAL_WINDOW_CHOICES = ["canonical", "zero"]
IDENTITY_NAMES = ["figa", "janssen", "poisson", "wexler-raz", "associativity"]

DEFAULT_LOG_LEVEL = "WARNING"
LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR"]

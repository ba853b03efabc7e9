"""Constants for the deformqm package."""
from __future__ import annotations

import math
from typing import Final

PACKAGE: Final = "deformqm"
SCHEMA_VERSION: Final = "1"

# Environment
ENV_THREADS: Final = "DEFORMQM_THREADS"
THREAD_ENV_VARS: Final = (
    "OMP_NUM_THREADS",
    "OPENBLAS_NUM_THREADS",
    "MKL_NUM_THREADS",
)

# Exit codes
EXIT_OK: Final = 0
EXIT_NUMERICAL: Final = 1
EXIT_VALIDATION: Final = 2

# Quadratic algebra
PARAM_HARD_LIMIT: Final = 1.0
PARAM_SOFT_LIMIT: Final = 0.1
ROTATION_TOL: Final = 1e-12
KAPPA_PRIME_TOL: Final = 1e-14

# Admissibility violation labels
VIOLATION_ALPHA: Final = "alpha > 0"
VIOLATION_BETA: Final = "beta > 0"
VIOLATION_KAPPA: Final = "kappa bound"

# q-Fock oracle
DEFAULT_QFOCK_DIM: Final = 60
QFOCK_BLOCK_MARGIN: Final = 20
SI_MATRIX_TOL: Final = 1e-10
QFOCK_SPECTRUM_TOL: Final = 1e-6
# exp() overflows a double above this argument
LOG_FLOAT_MAX: Final = 709.0

# Function families
FAMILY_KEMPF: Final = "kempf"
FAMILY_MORSE_EXP: Final = "morse-exp"
FAMILY_PT_TANH: Final = "pt-tanh"
FAMILY_PT_TAN: Final = "pt-tan"
FAMILY_NAMES: Final = (FAMILY_KEMPF, FAMILY_MORSE_EXP, FAMILY_PT_TANH, FAMILY_PT_TAN)
TAN_WINDOW_MARGIN: Final = 0.05
DEFAULT_WINDOW: Final = (-5.0, 5.0)
TAN_WINDOW: Final = (-math.pi / 2 + TAN_WINDOW_MARGIN, math.pi / 2 - TAN_WINDOW_MARGIN)

# Hermiticity boundary check
BOUNDARY_WINDOW: Final = 5
BOUNDARY_THRESHOLD: Final = 1e-6

# Central-difference stencils reach two points on either side
STENCIL_RADIUS: Final = 2
DEFAULT_TRIM: Final = 2 * STENCIL_RADIUS

# Systems
SYSTEM_OSC_FIELD: Final = "osc-field"
SYSTEM_PT_HYP: Final = "pt-hyp"
SYSTEM_PT_TRIG: Final = "pt-trig"
SYSTEM_MORSE: Final = "morse"
SYSTEM_MORSE_EXACT: Final = "morse-exact"
SYSTEM_MORSE_FIRST_ORDER: Final = "morse-first-order"
SYSTEM_GENERIC: Final = "generic"

SPECTRUM_SYSTEMS: Final = (SYSTEM_OSC_FIELD, SYSTEM_PT_HYP, SYSTEM_PT_TRIG, SYSTEM_MORSE)
VERIFY_SYSTEMS: Final = (
    SYSTEM_OSC_FIELD,
    SYSTEM_PT_HYP,
    SYSTEM_PT_TRIG,
    SYSTEM_MORSE,
    SYSTEM_MORSE_FIRST_ORDER,
    SYSTEM_GENERIC,
)
WAVEFUNCTION_SYSTEMS: Final = (SYSTEM_MORSE, SYSTEM_PT_HYP)

# Grid defaults
MIN_GRID_POINTS: Final = 16
MORSE_GRID: Final = (-5.0, 30.0, 6000)
PT_HYP_GRID: Final = (-12.0, 12.0, 4001)
PT_TRIG_GRID: Final = (-math.pi / 2 + 0.01, math.pi / 2 - 0.01, 4001)
# The Morse wall exp(-2 x_lo) must dominate the ground-state energy by this factor
MORSE_WALL_FACTOR: Final = 1e3

# Eigensolver
EIGEN_RESIDUAL_TOL: Final = 1e-10

# Exact spectra
VALIDITY_FRACTION: Final = 0.1
VALIDITY_FLAG_LIMIT: Final = 0.1

# Special functions
BESSEL_MAX_ORDER: Final = 1e3
BESSEL_MAX_ARG: Final = 1e4
# log_bessel_j reaches past BESSEL_MAX_ORDER through the Debye expansion
LOG_BESSEL_MAX_ORDER: Final = 1e6
# ascending series is used below this z²/nu, Debye above it
SERIES_SPREAD_LIMIT: Final = 40.0
GAMMA_MAX_ARG: Final = 170.0
SERIES_MAX_TERMS: Final = 500

# Output formats
FORMAT_CSV: Final = "csv"
FORMAT_JSON: Final = "json"

# CSV column orders
COLUMNS_CANONICALIZE: Final = (
    "schema_version",
    "alpha",
    "beta",
    "kappa_re",
    "kappa_im",
    "alpha_t",
    "beta_t",
    "kappa_t",
    "operator_scale",
    "phi",
    "alpha_p",
    "beta_p",
    "kappa_p",
    "delta",
    "sigma",
    "admissible",
    "violations",
    "gamma_exp",
    "dx0",
    "dp0",
    "dx_min",
    "dp_min",
)
COLUMNS_SPECTRUM: Final = (
    "schema_version",
    "system",
    "n",
    "e_exact",
    "e_first_order",
    "delta_n",
    "validity_flag",
)
COLUMNS_SPECTRUM_FIELD: Final = (
    "schema_version",
    "system",
    "n",
    "e_exact",
    "e_field_off",
    "de1",
    "de2",
    "epsilon",
)
COLUMNS_VERIFY: Final = (
    "schema_version",
    "system",
    "n",
    "e_analytic",
    "e_numeric",
    "abs_err",
    "rel_err",
    "budget",
    "residual",
    "passed",
)
COLUMNS_WAVEFUNCTION: Final = ("schema_version", "x", "re_psi", "abs2")

# Tolerance profiles for verify: coefficient of h**2, coefficient of beta**2, floor
TOLERANCE_PROFILES: Final = {
    SYSTEM_MORSE: (5.0, 0.0, 1e-9),
    SYSTEM_MORSE_FIRST_ORDER: (5.0, 20.0, 1e-9),
    SYSTEM_PT_HYP: (10.0, 5.0, 1e-9),
    SYSTEM_PT_TRIG: (10.0, 50.0, 1e-9),
    SYSTEM_GENERIC: (10.0, 50.0, 1e-9),
    SYSTEM_OSC_FIELD: (0.0, 0.0, QFOCK_SPECTRUM_TOL),
}

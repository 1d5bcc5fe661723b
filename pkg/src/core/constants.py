"""
Core constants and enumerations for PF computations.

These enums provide the vocabulary shared by every package: unit systems,
field and potential kinds, equation forms, solver back ends and CLI
choices. Physical constants are CODATA 2018 exact/recommended values.
"""

import math
from enum import Enum, IntEnum


class UnitSystem(str, Enum):
    """
    Unit system of a Constants record.

    Using str mixin allows direct string comparison and JSON serialization.
    """
    NATURAL = "natural"
    SI = "si"

    @classmethod
    def from_string(cls, value: str) -> "UnitSystem":
        """Convert string to UnitSystem enum, case-insensitive."""
        value_lower = value.strip().lower()
        mapping = {
            "natural": cls.NATURAL,
            "nat": cls.NATURAL,
            "si": cls.SI,
        }
        if value_lower in mapping:
            return mapping[value_lower]
        raise ValueError(f"Unknown unit system: {value}")


class FieldKind(str, Enum):
    """Kinds of stationary field profile chi(x)."""
    ZERO = "zero"
    LINEAR = "linear"
    SINE = "sine"
    BOX_EIGENFIELD = "box_eigenfield"
    SAMPLED = "sampled"

    @property
    def is_analytic(self) -> bool:
        """Return True if derivatives are available in closed form."""
        return self != FieldKind.SAMPLED


class PotentialKind(str, Enum):
    """Kinds of non-relativistic particle potential V_nrP(x)."""
    ZERO = "zero"
    INFINITE_BOX = "infinite_box"
    SAMPLED_GRID = "sampled_grid"


class EquationForm(str, Enum):
    """
    Relativistic time-independent Schrodinger equation forms.

    MASS_DEPENDENT: potential scaled with the relativistic mass, (1 + V/(m0 c^2)).
    MASS_INDEPENDENT: potential subtracted from E before squaring, (E - V)^2.
    """
    MASS_DEPENDENT = "mass_dependent"
    MASS_INDEPENDENT = "mass_independent"

    @classmethod
    def from_string(cls, value: str) -> "EquationForm":
        """Convert string to EquationForm, accepting short aliases."""
        value_lower = value.strip().lower().replace("-", "_")
        mapping = {
            "mass_dependent": cls.MASS_DEPENDENT,
            "dependent": cls.MASS_DEPENDENT,
            "dep": cls.MASS_DEPENDENT,
            "mass_independent": cls.MASS_INDEPENDENT,
            "independent": cls.MASS_INDEPENDENT,
            "indep": cls.MASS_INDEPENDENT,
        }
        if value_lower in mapping:
            return mapping[value_lower]
        raise ValueError(f"Unknown equation form: {value}")


class SolverBackend(str, Enum):
    """Spectral solver back ends."""
    AUTO = "auto"
    ANALYTIC = "analytic"
    FINITE_DIFFERENCE = "fd"
    SHOOTING = "shooting"


class DerivativeMode(str, Enum):
    """How second derivatives are taken for residual checks."""
    ANALYTIC = "analytic"
    FINITE_DIFFERENCE = "finite_difference"


class OutputFormat(str, Enum):
    """CLI report formats."""
    CSV = "csv"
    JSON = "json"
    JSONL = "jsonl"


class LimitFamily(str, Enum):
    """Limit-law families reported by the `limits` command."""
    NONREL = "nonrel"
    PHOTON = "photon"


class ExitCode(IntEnum):
    """Stable CLI exit codes."""
    SUCCESS = 0
    USAGE = 1
    NUMERICAL_FAILURE = 2
    REGIME_VIOLATION = 3


# CODATA 2018 (c and h exact in SI)
SPEED_OF_LIGHT_SI = 2.99792458e8  # m/s
HBAR_SI = 1.054571817e-34  # J s
TWO_PI = 2.0 * math.pi

# Numerical defaults
DEFAULT_GRID_SIZE = 2000
MIN_FD_GRID_SIZE = 64
DEFAULT_SHOOTING_TOL = 1e-10
MAX_REFINEMENT_ITERATIONS = 200
QUAD_ABS_TOL = 1e-10
QUAD_LIMIT = 200
MIN_SAMPLED_POINTS = 4

# Small-slope regime of the truncated interval forms
EXPANSION_SLOPE_LIMIT = 0.1
EXPANSION_SLOPE_WARN = 0.05

# Invariance verifier defaults
VERIFIER_MAX_SPEED = 0.9  # in units of c
VERIFIER_MAX_SLOPE = 0.1
VERIFIER_MIN_GAMMA = 10.0
VERIFIER_TOLERANCE = 1e-10
CLASSICAL_REDUCTION_TOLERANCE = 1e-12  # gamma_PF a = gamma'_p at zero slope
VERIFIER_SAMPLES = 10_000

# Fixed report header
VERIFIER_COLUMNS = [
    "seed",
    "v_p",
    "v_p_prime",
    "v_pf",
    "chi_slope",
    "gamma_pf_kinematic",
    "gamma_pf_matching",
    "residual_a18",
    "delta_truncated",
    "delta_full",
]

TRAJECTORY_COLUMNS = ["t", "x", "v", "q", "E"]

"""
Core module containing shared abstractions for PF computations.

This module provides:
- Shared data schemas (Constants, ParticleState, FrameContext, ...)
- Protocol definitions for force laws and spectral solver back ends
- Common enums and constants (UnitSystem, EquationForm, FieldKind, ...)
- Custom exceptions

Every package builds on these; nothing here depends on the physics packages.
"""

from .constants import (
    UnitSystem,
    FieldKind,
    PotentialKind,
    EquationForm,
    SolverBackend,
    DerivativeMode,
    OutputFormat,
    LimitFamily,
    ExitCode,
)
from .schemas import (
    Constants,
    PFCoupling,
    ParticleState,
    FrameContext,
    Event,
    ABFactors,
    EnergyBreakdown,
    TrajectoryRecord,
)
from .exceptions import (
    PFTheoryError,
    ConfigurationError,
    MissingConfigError,
    InvalidArgumentError,
    UnsupportedOrderError,
    RegimeError,
    FieldDomainError,
    SuperluminalError,
    PhotonicNotApplicableError,
    NumericalFailureError,
    LevelNotFoundError,
    UndefinedResidualError,
)
from .units import make_constants

__all__ = [
    # Constants/Enums
    "UnitSystem",
    "FieldKind",
    "PotentialKind",
    "EquationForm",
    "SolverBackend",
    "DerivativeMode",
    "OutputFormat",
    "LimitFamily",
    "ExitCode",
    # Schemas
    "Constants",
    "PFCoupling",
    "ParticleState",
    "FrameContext",
    "Event",
    "ABFactors",
    "EnergyBreakdown",
    "TrajectoryRecord",
    "make_constants",
    # Exceptions
    "PFTheoryError",
    "ConfigurationError",
    "MissingConfigError",
    "InvalidArgumentError",
    "UnsupportedOrderError",
    "RegimeError",
    "FieldDomainError",
    "SuperluminalError",
    "PhotonicNotApplicableError",
    "NumericalFailureError",
    "LevelNotFoundError",
    "UndefinedResidualError",
]

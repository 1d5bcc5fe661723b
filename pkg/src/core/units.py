"""
Unit handling at the CLI boundary.

All compute modules work in natural units (c = hbar = 1). SI values only
appear when the user asks for them; conversions below cover what the CLI
reports need and nothing more.
"""

import logging
import math
from typing import Optional

from .constants import UnitSystem, SPEED_OF_LIGHT_SI, HBAR_SI
from .exceptions import ConfigurationError
from .schemas import Constants

logger = logging.getLogger(__name__)


def make_constants(
    system: UnitSystem = UnitSystem.NATURAL,
    c: Optional[float] = None,
    hbar: Optional[float] = None,
) -> Constants:
    """
    Build a consistent Constants record.

    Args:
        system: Natural (c = hbar = 1) or SI (CODATA values)
        c: Optional override of the speed of light (SI only)
        hbar: Optional override of the reduced Planck constant (SI only)

    Returns:
        Immutable Constants record

    Raises:
        ConfigurationError: If an override is not positive
    """
    if isinstance(system, str):
        system = UnitSystem.from_string(system)

    for name, value in (("c", c), ("hbar", hbar)):
        if value is not None and not (math.isfinite(value) and value > 0):
            raise ConfigurationError(
                f"Override for '{name}' must be positive",
                config_key=name,
                details={"value": value},
            )

    if system == UnitSystem.NATURAL:
        if c is not None or hbar is not None:
            logger.debug("Natural units ignore overrides of c and hbar")
        return Constants(c=1.0, hbar=1.0, unit_system=UnitSystem.NATURAL)

    return Constants(
        c=c if c is not None else SPEED_OF_LIGHT_SI,
        hbar=hbar if hbar is not None else HBAR_SI,
        unit_system=UnitSystem.SI,
    )


def energy_scale(constants: Constants, m_ref: float) -> float:
    """Rest energy m_ref c^2, the natural energy unit for mass m_ref."""
    return m_ref * constants.c ** 2


def length_scale(constants: Constants, m_ref: float) -> float:
    """Reduced Compton wavelength hbar / (m_ref c), the natural length unit for mass m_ref."""
    return constants.hbar / (m_ref * constants.c)


def to_natural(value: float, dimension: str, constants: Constants, m_ref: float) -> float:
    """
    Express an SI quantity in natural units relative to a reference mass.

    Args:
        value: Quantity in SI units
        dimension: One of 'energy', 'length', 'mass', 'momentum', 'speed', 'time'
        constants: SI constants
        m_ref: Reference mass in kg (becomes 1 in natural units)
    """
    if constants.unit_system == UnitSystem.NATURAL:
        return value
    scales = _scales(constants, m_ref)
    if dimension not in scales:
        raise ConfigurationError(f"Unknown dimension '{dimension}'", config_key="dimension")
    return value / scales[dimension]


def from_natural(value: float, dimension: str, constants: Constants, m_ref: float) -> float:
    """Inverse of to_natural."""
    if constants.unit_system == UnitSystem.NATURAL:
        return value
    scales = _scales(constants, m_ref)
    if dimension not in scales:
        raise ConfigurationError(f"Unknown dimension '{dimension}'", config_key="dimension")
    return value * scales[dimension]


def _scales(constants: Constants, m_ref: float) -> dict:
    if not m_ref > 0:
        raise ConfigurationError("Reference mass must be positive", config_key="m_ref")
    length = length_scale(constants, m_ref)
    return {
        "energy": energy_scale(constants, m_ref),
        "length": length,
        "mass": m_ref,
        "momentum": m_ref * constants.c,
        "speed": constants.c,
        "time": length / constants.c,
    }

"""
Non-relativistic PF mechanics and trajectory integration.
"""

from .pf_mechanics import (
    field_velocity,
    field_force,
    pf_position,
    pf_speed,
    pf_force,
    energy_decomposition,
    pf_force_residual,
)
from .integrator import integrate_particle, rk4_step

__all__ = [
    "field_velocity",
    "field_force",
    "pf_position",
    "pf_speed",
    "pf_force",
    "energy_decomposition",
    "pf_force_residual",
    "integrate_particle",
    "rk4_step",
]

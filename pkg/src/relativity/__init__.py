"""
Special-relativistic PF kinematics: Lorentz factors, PF intervals,
frame matching and the randomized invariance verifier.
"""

from .pf_relativity import (
    gamma,
    rel_kinetic_particle,
    rel_kinetic_field,
    rel_kinetic_pf,
    gamma_pf_kinematic,
    pf_speed_relativistic,
    pf_speed_deficit,
    interval_unprimed,
    expansion_interval,
    free_photon_trajectory,
)
from .frames import (
    velocity_addition,
    lorentz_boost,
    make_frame_context,
    ab_factors,
    interval_primed,
    gamma_pf_matching,
    matching_residual,
    gamma_pf_second_order,
    delta_truncated,
    delta_full,
)
from .verifier import (
    VerifierSettings,
    VerifierSummary,
    run_verifier,
    quartic_scaling,
    verifier_document,
    read_verifier_document,
)

__all__ = [
    "gamma",
    "rel_kinetic_particle",
    "rel_kinetic_field",
    "rel_kinetic_pf",
    "gamma_pf_kinematic",
    "pf_speed_relativistic",
    "pf_speed_deficit",
    "interval_unprimed",
    "expansion_interval",
    "free_photon_trajectory",
    "velocity_addition",
    "lorentz_boost",
    "make_frame_context",
    "ab_factors",
    "interval_primed",
    "gamma_pf_matching",
    "matching_residual",
    "gamma_pf_second_order",
    "delta_truncated",
    "delta_full",
    "VerifierSettings",
    "VerifierSummary",
    "run_verifier",
    "quartic_scaling",
    "verifier_document",
    "read_verifier_document",
]

"""
Relativistic field equations and their spectra.

Momentum relations, the relativistic field force, spectral problems and
the analytic, finite-difference and shooting back ends, plus limit-law
reports.
"""

from .equations import (
    rel_field_force,
    oscillator_postulate_residual,
    momentum_sq_mass_dep,
    momentum_sq_mass_indep,
    momentum_sq,
    free_photon_energy,
    box_momenta,
    pf_total_energy,
    gamma_from_momentum,
)
from .problems import Potential, SpectralProblem, SpectralLevel, Spectrum
from .solvers import (
    solve_box_analytic,
    solve_fd,
    solve_shooting,
    get_solver,
    select_backend,
    solve_problem,
)
from .limits import (
    nonrel_limit_report,
    nonrel_mass_sweep,
    photon_limit_report,
    limit_document,
    read_limit_document,
)

__all__ = [
    "rel_field_force",
    "oscillator_postulate_residual",
    "momentum_sq_mass_dep",
    "momentum_sq_mass_indep",
    "momentum_sq",
    "free_photon_energy",
    "box_momenta",
    "pf_total_energy",
    "gamma_from_momentum",
    "Potential",
    "SpectralProblem",
    "SpectralLevel",
    "Spectrum",
    "solve_box_analytic",
    "solve_fd",
    "solve_shooting",
    "get_solver",
    "select_backend",
    "solve_problem",
    "nonrel_limit_report",
    "photon_limit_report",
    "nonrel_mass_sweep",
    "limit_document",
    "read_limit_document",
]

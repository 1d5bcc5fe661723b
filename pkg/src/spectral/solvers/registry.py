"""
Solver registry for the spectral back ends.

Implements a factory pattern: back ends register a factory under their
identifier and are built on demand with back-end specific options.
"""

import logging
from typing import Any, Callable, Dict, List

from src.core.constants import EquationForm, SolverBackend, UnitSystem
from src.core.exceptions import ConfigurationError
from src.core.protocols import SpectralSolver

from ..problems import SpectralProblem
from .scaling import (
    NATURAL,
    bracket_to_natural,
    problem_to_natural,
    reference_mass,
    spectrum_from_natural,
)

logger = logging.getLogger(__name__)

# Registry mapping back-end IDs to solver factory functions
_SOLVER_REGISTRY: Dict[str, Callable[..., SpectralSolver]] = {}


def _register_default_solvers() -> None:
    """Register built-in back ends."""

    def create_analytic_solver(**kwargs) -> SpectralSolver:
        from .analytic import AnalyticSolver
        return AnalyticSolver()

    def create_fd_solver(**kwargs) -> SpectralSolver:
        from .finite_difference import FiniteDifferenceSolver
        return FiniteDifferenceSolver(**{k: v for k, v in kwargs.items() if k == "grid_size"})

    def create_shooting_solver(**kwargs) -> SpectralSolver:
        from .shooting import ShootingSolver
        allowed = ("grid_size", "tol", "max_iterations", "progress")
        return ShootingSolver(**{k: v for k, v in kwargs.items() if k in allowed})

    _SOLVER_REGISTRY[SolverBackend.ANALYTIC.value] = create_analytic_solver
    _SOLVER_REGISTRY[SolverBackend.FINITE_DIFFERENCE.value] = create_fd_solver
    _SOLVER_REGISTRY[SolverBackend.SHOOTING.value] = create_shooting_solver


_register_default_solvers()


def get_solver(backend: SolverBackend, **kwargs: Any) -> SpectralSolver:
    """
    Get a spectral solver instance.

    Args:
        backend: Back-end identifier (AUTO is not accepted here; see select_backend)
        **kwargs: Back-end options such as grid_size or tol; options a
            back end does not use are ignored

    Returns:
        Configured SpectralSolver

    Raises:
        ConfigurationError: If the back end is not registered
    """
    backend_id = backend.value if isinstance(backend, SolverBackend) else str(backend)
    factory = _SOLVER_REGISTRY.get(backend_id)
    if factory is None:
        raise ConfigurationError(
            f"Unknown solver back end '{backend_id}'",
            config_key="backend",
            details={"supported": list_backends()},
        )
    solver = factory(**kwargs)
    logger.debug(f"Created solver back end {backend_id}")
    return solver


def register_solver(backend_id: str, factory: Callable[..., SpectralSolver]) -> None:
    """
    Register a new back end.

    Args:
        backend_id: Unique identifier
        factory: Factory function that creates solver instances
    """
    if backend_id in _SOLVER_REGISTRY:
        logger.warning(f"Overwriting existing solver back end {backend_id}")
    _SOLVER_REGISTRY[backend_id] = factory
    logger.info(f"Registered solver back end {backend_id}")


def list_backends() -> List[str]:
    """List all registered back-end IDs."""
    return list(_SOLVER_REGISTRY.keys())


def select_backend(problem: SpectralProblem) -> SolverBackend:
    """
    Automatic back-end choice.

    Constant potentials and the mass-dependent form are linear
    eigenproblems and go to finite differences; the mass-independent form
    with varying V is non-linear in E and goes to shooting.
    """
    if problem.potential.is_constant or problem.form == EquationForm.MASS_DEPENDENT:
        return SolverBackend.FINITE_DIFFERENCE
    return SolverBackend.SHOOTING


def solve_problem(
    problem: SpectralProblem,
    n_levels: int,
    constants,
    backend: SolverBackend = SolverBackend.AUTO,
    energy_bracket=None,
    **kwargs: Any,
):
    """
    Solve a problem with a named back end, or the automatic choice.

    SI problems are solved in natural units of a reference mass and
    mapped back, so back ends never see SI magnitudes.

    Returns:
        Spectrum; its backend field records the back end used
    """
    if SolverBackend(backend) == SolverBackend.AUTO:
        backend = select_backend(problem)
        logger.info(f"Auto-selected solver back end {backend.value}")
    solver = get_solver(backend, **kwargs)
    if not solver.supports(problem):
        raise ConfigurationError(
            f"Back end '{solver.backend_id}' cannot solve this problem",
            config_key="backend",
            details={"form": problem.form.value, "potential": problem.potential.kind.value},
        )
    if constants.unit_system == UnitSystem.NATURAL:
        return solver.solve(problem, n_levels, constants, energy_bracket)

    m_ref = reference_mass(problem, constants)
    logger.debug(f"Solving in natural units of m_ref={m_ref:.6g}")
    spectrum = solver.solve(
        problem_to_natural(problem, constants, m_ref),
        n_levels,
        NATURAL,
        bracket_to_natural(energy_bracket, constants, m_ref),
    )
    return spectrum_from_natural(spectrum, problem, constants, m_ref)

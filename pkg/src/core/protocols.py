"""
Protocol definitions for PF computations.

Protocols define the interfaces that pluggable pieces must follow.
Using Protocol (PEP 544) enables structural subtyping - a plain function
or a class only needs the right call signature.

This module defines protocols for:
- Particle force laws driving the trajectory integrator
- Particle potentials used for energy bookkeeping
- Spectral solver back ends
"""

from typing import Protocol, Optional, Tuple, runtime_checkable

from .schemas import Constants


@runtime_checkable
class ForceLaw(Protocol):
    """
    Particle force f_P(x) for Newton's second law m x'' = f_P.
    """

    def __call__(self, x: float) -> float:
        ...


@runtime_checkable
class PotentialLaw(Protocol):
    """
    Particle potential V_P(x); the energy column of a trajectory is
    1/2 m v^2 + V_P(x) when one is supplied.
    """

    def __call__(self, x: float) -> float:
        ...


@runtime_checkable
class SpectralSolver(Protocol):
    """
    Protocol for spectral solver back ends.

    Each back end (analytic, finite difference, shooting) takes a
    SpectralProblem and returns a Spectrum with the lowest n_levels
    levels. Implementations live in src/spectral/solvers and are looked
    up through src/spectral/solvers/registry.py.
    """

    @property
    def backend_id(self) -> str:
        """Unique identifier of the back end (e.g. 'fd', 'shooting')."""
        ...

    def supports(self, problem) -> bool:
        """
        Check whether this back end can solve a problem.

        Args:
            problem: SpectralProblem to check

        Returns:
            True if the problem is inside the back end's regime
        """
        ...

    def solve(
        self,
        problem,
        n_levels: int,
        constants: Constants,
        energy_bracket: Optional[Tuple[float, float]] = None,
    ):
        """
        Compute the lowest n_levels levels.

        Args:
            problem: SpectralProblem
            n_levels: Number of levels (n = 1..n_levels)
            constants: Physical constants
            energy_bracket: Optional search window (shooting only)

        Returns:
            Spectrum
        """
        ...

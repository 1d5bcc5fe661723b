"""
Closed-form spectrum of the infinite square well.

E_n = c sqrt(n^2 h^2 / (4 a^2) + m0^2 c^2) with eigenfields sin(n pi x / a).
A constant floor V0 shifts the mass-independent levels by V0 and scales
the mass-dependent ones by 1 + V0/(m0 c^2).
"""

import logging
import math
from typing import Optional, Tuple

from src.core.constants import EquationForm, SolverBackend
from src.core.exceptions import InvalidArgumentError
from src.core.schemas import Constants
from src.field.profiles import box_eigenfield

from ..problems import SpectralLevel, SpectralProblem, Spectrum
from .common import check_levels, problem_record

logger = logging.getLogger(__name__)


def box_levels(m0: float, a: float, n_max: int, constants: Constants):
    """(n, E_n, p_n^2) for n = 1..n_max, V = 0."""
    levels = []
    for n in range(1, n_max + 1):
        p_sq = (n * constants.h / (2.0 * a)) ** 2
        energy = constants.c * math.sqrt(p_sq + (m0 * constants.c) ** 2)
        levels.append((n, energy, p_sq))
    return levels


def solve_box_analytic(m0: float, a: float, n_max: int, constants: Constants) -> Spectrum:
    """
    Analytic box spectrum for n = 1..n_max.

    Args:
        m0: Rest mass (0 for a photonic system)
        a: Box width
        n_max: Highest level index
        constants: Physical constants

    Raises:
        InvalidArgumentError: If a <= 0, n_max < 1 or m0 < 0
    """
    problem = SpectralProblem.box(a, m0)
    return AnalyticSolver().solve(problem, n_max, constants)


class AnalyticSolver:
    """Back end for constant potentials between walls at 0 and a."""

    @property
    def backend_id(self) -> str:
        return SolverBackend.ANALYTIC.value

    def supports(self, problem: SpectralProblem) -> bool:
        return problem.is_box

    def solve(
        self,
        problem: SpectralProblem,
        n_levels: int,
        constants: Constants,
        energy_bracket: Optional[Tuple[float, float]] = None,
    ) -> Spectrum:
        check_levels(n_levels)
        if not self.supports(problem):
            raise InvalidArgumentError(
                "Analytic back end needs a constant potential on [0, a]",
                argument="problem",
                details=problem.to_dict(),
            )
        problem.check_positivity(constants)
        a = problem.width
        v0 = problem.potential.constant_value

        levels = []
        for n, e0, p_sq in box_levels(problem.m0, a, n_levels, constants):
            if problem.form == EquationForm.MASS_DEPENDENT:
                energy = (1.0 + v0 / (problem.m0 * constants.c ** 2)) * e0
            else:
                energy = v0 + e0
            levels.append(
                SpectralLevel(
                    n=n,
                    energy=energy,
                    eigenfield=box_eigenfield(n, a),
                    nodes=n - 1,
                    momentum_sq=p_sq,
                    residual=0.0,
                )
            )

        logger.info(f"Analytic box spectrum: {n_levels} levels, a={a:.6g}, m0={problem.m0:.6g}")
        return Spectrum(
            levels=levels,
            grid=None,
            backend=self.backend_id,
            problem=problem_record(problem, constants),
            meta={"n_levels": n_levels},
        )

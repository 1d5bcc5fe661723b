"""
Finite-difference eigensolver for the relativistic Schrodinger forms.

Second-order central differences on N interior nodes, h = L / (N + 1).
With A = hbar^2 c^2 (-D2) + m0^2 c^4 I and W = diag((1 + V/(m0 c^2))^-2),
the mass-dependent form is the generalized problem A chi = E^2 W chi.
Scaling by S = W^-1/2 keeps it symmetric tridiagonal, S A S y = E^2 y with
chi = S y, so scipy's eigh_tridiagonal applies. The mass-independent form
is linear in (E - V)^2 only for constant V.
"""

import logging
import math
from typing import Optional, Tuple

import numpy as np
from scipy.linalg import LinAlgError, eigh_tridiagonal

from src.core.constants import DEFAULT_GRID_SIZE, EquationForm, MIN_FD_GRID_SIZE, SolverBackend
from src.core.exceptions import InvalidArgumentError, NumericalFailureError, RegimeError
from src.core.schemas import Constants
from src.utils.numerics import uniform_grid

from ..problems import SpectralLevel, SpectralProblem, Spectrum
from .common import check_levels, grid_eigenfield, problem_record

logger = logging.getLogger(__name__)


def _tridiagonal_apply(diag: np.ndarray, off: np.ndarray, v: np.ndarray) -> np.ndarray:
    out = diag * v
    out[:-1] += off * v[1:]
    out[1:] += off * v[:-1]
    return out


def _lowest_eigenpairs(diag: np.ndarray, off: np.ndarray, n_levels: int):
    try:
        return eigh_tridiagonal(diag, off, select="i", select_range=(0, n_levels - 1))
    except (LinAlgError, ValueError) as e:
        raise NumericalFailureError(
            "Tridiagonal eigensolver failed",
            details={"n_levels": n_levels, "size": diag.size, "reason": str(e)},
        )


def solve_fd(
    problem: SpectralProblem,
    grid_size: int,
    n_levels: int,
    constants: Constants,
) -> Spectrum:
    """
    Lowest n_levels levels of a Dirichlet problem by finite differences.

    Args:
        problem: Spectral problem; the mass-independent form needs constant V
        grid_size: Number of interior nodes (>= 64)
        n_levels: Number of levels
        constants: Physical constants

    Raises:
        InvalidArgumentError: If the grid is too small or the problem unsupported
        RegimeError: If 1 + V/(m0 c^2) <= 0 for the mass-dependent form
        NumericalFailureError: If the eigensolver fails
    """
    return FiniteDifferenceSolver(grid_size).solve(problem, n_levels, constants)


class FiniteDifferenceSolver:
    """Symmetric tridiagonal back end."""

    def __init__(self, grid_size: int = DEFAULT_GRID_SIZE):
        if int(grid_size) != grid_size or grid_size < MIN_FD_GRID_SIZE:
            raise InvalidArgumentError(
                f"Grid needs at least {MIN_FD_GRID_SIZE} interior nodes",
                argument="grid_size",
                value=grid_size,
            )
        self.grid_size = int(grid_size)

    @property
    def backend_id(self) -> str:
        return SolverBackend.FINITE_DIFFERENCE.value

    def supports(self, problem: SpectralProblem) -> bool:
        return problem.form == EquationForm.MASS_DEPENDENT or problem.potential.is_constant

    def solve(
        self,
        problem: SpectralProblem,
        n_levels: int,
        constants: Constants,
        energy_bracket: Optional[Tuple[float, float]] = None,
    ) -> Spectrum:
        check_levels(n_levels, self.grid_size)
        if not self.supports(problem):
            raise InvalidArgumentError(
                "Mass-independent form with non-constant V is non-linear in E; use the shooting back end",
                argument="backend",
                value=self.backend_id,
            )
        if energy_bracket is not None:
            logger.debug("Finite-difference back end ignores the energy bracket")
        problem.check_positivity(constants)

        c, hbar, m0 = constants.c, constants.hbar, problem.m0
        rest = m0 * c * c
        xs, h = uniform_grid(problem.domain[0], problem.domain[1], self.grid_size)
        interior = xs[1:-1]
        alpha = (hbar * c / h) ** 2

        # Kinetic part hbar^2 c^2 (-D2); the rest term is added analytically
        kin_diag = np.full(self.grid_size, 2.0 * alpha)
        kin_off = np.full(self.grid_size - 1, -alpha)

        if problem.potential.is_constant:
            mu, vectors = _lowest_eigenpairs(kin_diag, kin_off, n_levels)
            if np.any(mu < 0):
                raise NumericalFailureError("Negative kinetic eigenvalue", details={"mu": mu.tolist()})
            v0 = problem.potential.constant_value
            base = np.sqrt(mu + rest * rest)
            if problem.form == EquationForm.MASS_DEPENDENT:
                energies = (1.0 + v0 / rest) * base
            else:
                energies = v0 + base
            momenta = mu / (c * c)
            fields = vectors
            residuals = [
                float(np.max(np.abs(_tridiagonal_apply(kin_diag, kin_off, vectors[:, j]) - mu[j] * vectors[:, j])))
                / max(mu[j], np.finfo(float).tiny)
                for j in range(n_levels)
            ]
        else:
            # Mass-dependent form with varying V
            scale = 1.0 + problem.potential.evaluate(interior) / rest
            if np.any(scale <= 0):
                raise RegimeError(
                    "Mass-dependent form needs 1 + V/(m0 c^2) > 0",
                    quantity="1+V/(m0c^2)",
                    value=float(scale.min()),
                )
            diag = scale * scale * (kin_diag + rest * rest)
            off = scale[:-1] * scale[1:] * kin_off
            lam, vectors = _lowest_eigenpairs(diag, off, n_levels)
            if np.any(lam < 0):
                raise NumericalFailureError("Negative E^2 eigenvalue", details={"lambda": lam.tolist()})
            energies = np.sqrt(lam)
            momenta = [None] * n_levels
            fields = scale[:, None] * vectors
            residuals = [
                float(np.max(np.abs(_tridiagonal_apply(diag, off, vectors[:, j]) - lam[j] * vectors[:, j])))
                / lam[j]
                for j in range(n_levels)
            ]

        levels = []
        for j in range(n_levels):
            values = np.zeros(xs.size)
            values[1:-1] = fields[:, j]
            profile, nodes = grid_eigenfield(xs, values, h)
            levels.append(
                SpectralLevel(
                    n=j + 1,
                    energy=float(energies[j]),
                    eigenfield=profile,
                    nodes=nodes,
                    momentum_sq=None if momenta[j] is None else float(momenta[j]),
                    residual=residuals[j],
                )
            )

        logger.info(
            f"Finite-difference spectrum: {n_levels} levels on {self.grid_size} nodes "
            f"(form={problem.form.value}, max residual={max(residuals):.2e})"
        )
        return Spectrum(
            levels=levels,
            grid=xs,
            backend=self.backend_id,
            problem=problem_record(problem, constants),
            meta={"grid_size": self.grid_size, "spacing": h, "n_levels": n_levels},
        )

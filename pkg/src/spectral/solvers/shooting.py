"""
Shooting eigensolver.

Integrates chi'' = -kappa(x; E) chi with kappa = p^2(E, V(x)) / hbar^2 from
the left wall (chi = 0, chi' = 1) by RK4, brackets level n by counting
sign changes of chi (Sturm oscillation), and refines the energy with
scipy's brentq on the right-wall value chi(x_hi; E). Works for either
equation form and any potential; node counting assumes E > V.
"""

import logging
import math
from typing import List, Optional, Tuple

import numpy as np
from scipy.optimize import brentq
from tqdm import tqdm

from src.core.constants import (
    DEFAULT_GRID_SIZE,
    DEFAULT_SHOOTING_TOL,
    EquationForm,
    MAX_REFINEMENT_ITERATIONS,
    SolverBackend,
)
from src.core.exceptions import InvalidArgumentError, LevelNotFoundError, NumericalFailureError
from src.core.schemas import Constants
from src.utils.numerics import uniform_grid

from ..problems import SpectralLevel, SpectralProblem, Spectrum
from .common import check_levels, grid_eigenfield, problem_record

logger = logging.getLogger(__name__)


class _Shooter:
    """
    Integrates one problem at trial energies on a fixed grid.

    Trial energies are excesses eps = E - m0 c^2 over the rest energy, so
    levels just above m0 c^2 keep their digits: with w = E - V - m0 c^2
    (mass-independent) or w = E / s - m0 c^2, s = 1 + V/(m0 c^2)
    (mass-dependent), p^2 c^2 = w (w + 2 m0 c^2) without cancellation.
    """

    def __init__(self, problem: SpectralProblem, constants: Constants, n_steps: int):
        self.problem = problem
        self.constants = constants
        self.xs, self.h = uniform_grid(problem.domain[0], problem.domain[1], n_steps - 1)
        mids = 0.5 * (self.xs[:-1] + self.xs[1:])
        self.v_nodes = problem.potential.evaluate(self.xs)
        self.v_mids = problem.potential.evaluate(mids)
        self.rest = problem.m0 * constants.c ** 2
        if problem.form == EquationForm.MASS_DEPENDENT:
            self.scale_nodes = 1.0 + self.v_nodes / self.rest
            self.scale_mids = 1.0 + self.v_mids / self.rest

    def kinetic_excess(self, excess: float, v, scale=None):
        """w with p^2 c^2 = w (w + 2 m0 c^2)."""
        if self.problem.form == EquationForm.MASS_DEPENDENT:
            return (excess - v) / scale
        return excess - v

    def kappa(self, excess: float, at_nodes: bool) -> np.ndarray:
        hbar_c = self.constants.hbar * self.constants.c
        if self.problem.form == EquationForm.MASS_DEPENDENT:
            scale = self.scale_nodes if at_nodes else self.scale_mids
        else:
            scale = None
        w = self.kinetic_excess(excess, self.v_nodes if at_nodes else self.v_mids, scale)
        return w * (w + 2.0 * self.rest) / (hbar_c * hbar_c)

    def shoot(self, excess: float) -> List[float]:
        """chi at every grid node for a trial excess energy."""
        k_nodes = self.kappa(excess, True).tolist()
        k_mids = self.kappa(excess, False).tolist()
        h = self.h
        half = 0.5 * h
        y, z = 0.0, 1.0
        ys = [y]
        for i in range(len(k_mids)):
            k0, km, k1 = k_nodes[i], k_mids[i], k_nodes[i + 1]
            a1y, a1z = z, -k0 * y
            a2y, a2z = z + half * a1z, -km * (y + half * a1y)
            a3y, a3z = z + half * a2z, -km * (y + half * a2y)
            a4y, a4z = z + h * a3z, -k1 * (y + h * a3y)
            y += h * (a1y + 2.0 * a2y + 2.0 * a3y + a4y) / 6.0
            z += h * (a1z + 2.0 * a2z + 2.0 * a3z + a4z) / 6.0
            ys.append(y)
        if not math.isfinite(y):
            raise NumericalFailureError("Shooting overflow", details={"energy": self.rest + excess})
        return ys

    def nodes(self, excess: float) -> int:
        """Sign changes of chi after the left wall, right-wall value included."""
        signs = np.sign(self.shoot(excess)[1:])
        signs = signs[signs != 0]
        return int(np.count_nonzero(signs[1:] != signs[:-1])) if signs.size > 1 else 0

    def boundary(self, excess: float) -> float:
        return self.shoot(excess)[-1]

    def momentum_sq(self, excess: float) -> Optional[float]:
        """p^2 of a level in a constant potential, None when V varies."""
        if not self.problem.potential.is_constant:
            return None
        v0 = self.problem.potential.constant_value
        scale = 1.0 + v0 / self.rest if self.problem.form == EquationForm.MASS_DEPENDENT else None
        w = self.kinetic_excess(excess, v0, scale)
        return float(w * (w + 2.0 * self.rest) / self.constants.c ** 2)

    def default_bracket(self, n_target: int) -> Tuple[float, float]:
        """
        Excess-energy window holding levels 1..n_target.

        The lower end makes kappa <= 0 everywhere; the upper end makes
        kappa at least the (n_target + 1)-th free-box wavenumber squared.
        """
        c, hbar = self.constants.c, self.constants.hbar
        pc = hbar * (n_target + 1) * math.pi / self.problem.width * c
        free = pc * pc / (math.sqrt(pc * pc + self.rest * self.rest) + self.rest)
        v_min, v_max = self.problem.potential_range()
        if self.problem.form == EquationForm.MASS_DEPENDENT:
            s_min = float(self.scale_nodes.min())
            s_max = max(float(self.scale_nodes.max()), float(self.scale_mids.max()))
            lo = self.rest * (s_min - 1.0)
            hi = free * s_max + self.rest * (s_max - 1.0)
        else:
            lo = max(v_min, -self.rest)
            hi = v_max + free
        return lo, hi


def solve_shooting(
    problem: SpectralProblem,
    E_bracket: Optional[Tuple[float, float]],
    n_target: int,
    constants: Constants,
    tol: float = DEFAULT_SHOOTING_TOL,
    grid_size: int = DEFAULT_GRID_SIZE,
) -> Spectrum:
    """
    Levels n = 1..n_target by shooting.

    Args:
        problem: Spectral problem (either form)
        E_bracket: Energy window holding the levels, or None for the default
        n_target: Number of levels
        constants: Physical constants
        tol: Bound on |chi(x_hi)| / max|chi| for each level
        grid_size: Number of integration steps

    Raises:
        LevelNotFoundError: If the window does not hold a requested level
        NumericalFailureError: If a level needs more than the allowed refinements
    """
    return ShootingSolver(grid_size=grid_size, tol=tol).solve(problem, n_target, constants, E_bracket)


class ShootingSolver:
    """RK4 shooting back end with Sturm bracketing."""

    def __init__(
        self,
        grid_size: int = DEFAULT_GRID_SIZE,
        tol: float = DEFAULT_SHOOTING_TOL,
        max_iterations: int = MAX_REFINEMENT_ITERATIONS,
        progress: bool = False,
    ):
        if int(grid_size) != grid_size or grid_size < 2:
            raise InvalidArgumentError("Need at least two integration steps", argument="grid_size", value=grid_size)
        if not (math.isfinite(tol) and tol > 0):
            raise InvalidArgumentError("Shooting tolerance must be positive", argument="tol", value=tol)
        self.grid_size = int(grid_size)
        self.tol = tol
        self.max_iterations = max_iterations
        self.progress = progress

    @property
    def backend_id(self) -> str:
        return SolverBackend.SHOOTING.value

    def supports(self, problem: SpectralProblem) -> bool:
        return True

    def solve(
        self,
        problem: SpectralProblem,
        n_levels: int,
        constants: Constants,
        energy_bracket: Optional[Tuple[float, float]] = None,
    ) -> Spectrum:
        check_levels(n_levels)
        problem.check_positivity(constants)
        shooter = _Shooter(problem, constants, self.grid_size)
        rest = shooter.rest

        if energy_bracket is not None:
            bracket = (float(energy_bracket[0]), float(energy_bracket[1]))
            lo, hi = bracket[0] - rest, bracket[1] - rest
        else:
            lo, hi = shooter.default_bracket(n_levels)
            bracket = (rest + lo, rest + hi)
        if not lo < hi:
            raise InvalidArgumentError("Energy bracket must satisfy lo < hi", argument="E_bracket", value=bracket)
        nodes_lo, nodes_hi = shooter.nodes(lo), shooter.nodes(hi)
        logger.debug(f"Shooting bracket [{bracket[0]:.6g}, {bracket[1]:.6g}] nodes {nodes_lo}..{nodes_hi}")
        if nodes_lo > 0:
            raise LevelNotFoundError(1, bracket, details={"nodes_at_lower": nodes_lo})
        if nodes_hi < n_levels:
            raise LevelNotFoundError(nodes_hi + 1, bracket, details={"nodes_at_upper": nodes_hi})

        levels = []
        iterations_used = []
        for n in tqdm(range(1, n_levels + 1), desc="Shooting levels", disable=not self.progress):
            excess, iterations, lo = self._refine(shooter, n, lo, hi)
            energy = rest + excess
            values = np.asarray(shooter.shoot(excess))
            residual = abs(values[-1]) / float(np.max(np.abs(values)))
            if residual > self.tol:
                raise NumericalFailureError(
                    f"Level n={n} did not reach the boundary tolerance",
                    residual=residual,
                    iterations=iterations,
                    details={"energy": energy, "tol": self.tol},
                )
            profile, nodes = grid_eigenfield(shooter.xs, values, shooter.h)
            levels.append(
                SpectralLevel(
                    n=n,
                    energy=energy,
                    eigenfield=profile,
                    nodes=nodes,
                    momentum_sq=shooter.momentum_sq(excess),
                    residual=residual,
                )
            )
            iterations_used.append(iterations)
            logger.debug(f"n={n} E={energy:.15g} iterations={iterations} residual={residual:.2e}")

        logger.info(
            f"Shooting spectrum: {n_levels} levels on {self.grid_size} steps (form={problem.form.value})"
        )
        return Spectrum(
            levels=levels,
            grid=shooter.xs,
            backend=self.backend_id,
            problem=problem_record(problem, constants),
            meta={
                "grid_size": self.grid_size,
                "spacing": shooter.h,
                "tol": self.tol,
                "iterations": iterations_used,
                "bracket": list(bracket),
                "n_levels": n_levels,
            },
        )

    def _refine(self, shooter: _Shooter, n: int, lo: float, hi: float):
        """
        Isolate level n between lo (n - 1 nodes or fewer) and hi (n nodes or more).

        Returns:
            (excess energy, iterations used, lower end for level n + 1)
        """
        iterations = 0
        nodes_lo, nodes_hi = shooter.nodes(lo), shooter.nodes(hi)
        while not (nodes_lo == n - 1 and nodes_hi == n):
            iterations += 1
            if iterations > self.max_iterations:
                raise NumericalFailureError(
                    f"Could not isolate level n={n}",
                    iterations=iterations,
                    details={"bracket": (lo, hi), "nodes": (nodes_lo, nodes_hi)},
                )
            mid = 0.5 * (lo + hi)
            nodes_mid = shooter.nodes(mid)
            if nodes_mid >= n:
                hi, nodes_hi = mid, nodes_mid
            else:
                lo, nodes_lo = mid, nodes_mid

        f_lo, f_hi = shooter.boundary(lo), shooter.boundary(hi)
        if f_lo == 0.0:
            return lo, iterations, hi
        if f_hi == 0.0:
            return hi, iterations, hi
        if f_lo * f_hi > 0:
            raise LevelNotFoundError(n, (shooter.rest + lo, shooter.rest + hi), details={"f_lo": f_lo, "f_hi": f_hi})

        # |chi(x_hi)| / max|chi| grows roughly like width * |d eps|
        scale = max(abs(hi), np.finfo(float).tiny) / max(shooter.problem.width, 1.0)
        xtol = max(1e-3 * self.tol, 4.0 * np.finfo(float).eps) * scale
        excess, result = brentq(
            shooter.boundary,
            lo,
            hi,
            xtol=xtol,
            maxiter=max(self.max_iterations - iterations, 1),
            full_output=True,
            disp=False,
        )
        iterations += result.iterations
        if not result.converged:
            raise NumericalFailureError(
                f"Energy refinement for level n={n} did not converge",
                iterations=iterations,
                details={"bracket": (lo, hi), "flag": result.flag},
            )
        # level n + 1 lies above hi's bracket end, whose node count is n
        return excess, iterations, hi

"""
Relativistic PF field equations.

The relativistic field force, the oscillator postulate check, the two
momentum relations behind the mass-dependent and mass-independent
Schrodinger forms, and the photon and box momentum relations.
"""

import logging
import math
from typing import Tuple, Union

import numpy as np

from src.core.constants import DerivativeMode, EquationForm
from src.core.exceptions import (
    InvalidArgumentError,
    PhotonicNotApplicableError,
    RegimeError,
    UndefinedResidualError,
)
from src.core.schemas import Constants, ParticleState
from src.field.profiles import FieldProfile
from src.relativity.pf_relativity import gamma
from src.utils.numerics import second_difference

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]


def _scalar_or_array(values: np.ndarray, like) -> ArrayLike:
    return float(values) if np.ndim(like) == 0 else values


def rel_field_force(state: ParticleState, f_rp: float, profile: FieldProfile, c: float = 1.0) -> float:
    """
    Relativistic force on the field, f_rF = f_rP chi' + gamma_p m0 v_p^2 chi''.

    state.m is the rest mass m0.
    """
    g = gamma(state.v_p, c)
    slope = profile.evaluate(state.x, 1)
    curvature = profile.evaluate(state.x, 2)
    return f_rp * slope + g * state.m * state.v_p ** 2 * curvature


def oscillator_postulate_residual(
    profile: FieldProfile,
    p: float,
    hbar: float,
    grid: np.ndarray,
    mode: DerivativeMode = DerivativeMode.ANALYTIC,
) -> float:
    """
    How well chi solves -hbar^2 chi'' = p^2 chi on a grid.

    Returns max|hbar^2 chi'' + p^2 chi| / max|p^2 chi|. In finite-difference
    mode the grid must be uniform and only interior nodes are compared.

    Raises:
        UndefinedResidualError: If p^2 chi vanishes on the grid
        FieldDomainError: If the grid leaves the profile's domain
    """
    grid = np.asarray(grid, dtype=float)
    chi = profile.evaluate(grid, 0)

    if DerivativeMode(mode) == DerivativeMode.ANALYTIC:
        chi_dd = profile.evaluate(grid, 2)
        target = chi
    else:
        if grid.size < 3:
            raise InvalidArgumentError("Finite-difference mode needs at least 3 grid points", argument="grid")
        h = grid[1] - grid[0]
        if not np.allclose(np.diff(grid), h, rtol=1e-9, atol=0.0):
            raise InvalidArgumentError("Finite-difference mode needs a uniform grid", argument="grid")
        chi_dd = second_difference(chi, h)
        target = chi[1:-1]

    scale = float(np.max(np.abs(p * p * target)))
    if scale == 0.0:
        raise UndefinedResidualError(
            "Oscillator residual undefined: p^2 chi vanishes on the grid",
            details={"p": p, "field": profile.kind.value},
        )
    residual = float(np.max(np.abs(hbar * hbar * chi_dd + p * p * target))) / scale
    logger.debug(f"oscillator residual p={p:.6g} mode={DerivativeMode(mode).value}: {residual:.3e}")
    return residual


def momentum_sq_mass_dep(E: float, V: ArrayLike, m0: float, c: float = 1.0) -> ArrayLike:
    """
    p^2 = (1 + V/(m0 c^2))^-2 E^2/c^2 - m0^2 c^2.

    Negative values mark classically forbidden regions and are returned as is.

    Raises:
        PhotonicNotApplicableError: If m0 = 0
        RegimeError: If 1 + V/(m0 c^2) <= 0 anywhere
    """
    if m0 == 0:
        raise PhotonicNotApplicableError("momentum_sq_mass_dep")
    if m0 < 0:
        raise InvalidArgumentError("Rest mass must be non-negative", argument="m0", value=m0)
    rest = m0 * c * c
    scale = 1.0 + np.asarray(V, dtype=float) / rest
    if np.any(scale <= 0):
        raise RegimeError(
            "Mass-dependent form needs 1 + V/(m0 c^2) > 0",
            quantity="1+V/(m0c^2)",
            value=float(np.min(scale)),
        )
    p_sq = (E / (c * scale)) ** 2 - (m0 * c) ** 2
    return _scalar_or_array(p_sq, V)


def momentum_sq_mass_indep(E: float, V: ArrayLike, m0: float, c: float = 1.0) -> ArrayLike:
    """p^2 = (E - V)^2 / c^2 - m0^2 c^2; may be negative."""
    if m0 < 0:
        raise InvalidArgumentError("Rest mass must be non-negative", argument="m0", value=m0)
    p_sq = ((E - np.asarray(V, dtype=float)) / c) ** 2 - (m0 * c) ** 2
    return _scalar_or_array(p_sq, V)


def momentum_sq(form: EquationForm, E: float, V: ArrayLike, m0: float, c: float = 1.0) -> ArrayLike:
    """Dispatch to the momentum relation of an equation form."""
    if EquationForm(form) == EquationForm.MASS_DEPENDENT:
        return momentum_sq_mass_dep(E, V, m0, c)
    return momentum_sq_mass_indep(E, V, m0, c)


def free_photon_energy(wavelength: float, constants: Constants) -> float:
    """E = h c / lambda."""
    if not wavelength > 0:
        raise InvalidArgumentError("Wavelength must be positive", argument="wavelength", value=wavelength)
    return constants.h * constants.c / wavelength


def box_momenta(n: int, a: float, constants: Constants) -> Tuple[float, float]:
    """The two de Broglie momenta -n h / 2a and +n h / 2a of box level n."""
    if int(n) != n or n < 1:
        raise InvalidArgumentError("Level index must be a positive integer", argument="n", value=n)
    if not a > 0:
        raise InvalidArgumentError("Box width must be positive", argument="a", value=a)
    p = n * constants.h / (2.0 * a)
    return -p, p


def pf_total_energy(form: EquationForm, gamma_p: float, V: float, m0: float, c: float = 1.0) -> float:
    """
    Relativistic total energy of a massive PF system.

    Mass-dependent: E = gamma (V + m0 c^2). Mass-independent: E = V + gamma m0 c^2.
    """
    if gamma_p < 1:
        raise InvalidArgumentError("gamma_p must be >= 1", argument="gamma_p", value=gamma_p)
    rest = m0 * c * c
    if EquationForm(form) == EquationForm.MASS_DEPENDENT:
        return gamma_p * (V + rest)
    return V + gamma_p * rest


def gamma_from_momentum(p: float, m0: float, c: float = 1.0) -> float:
    """gamma = sqrt(1 + p^2 / (m0^2 c^2))."""
    if m0 == 0:
        raise PhotonicNotApplicableError("gamma_from_momentum")
    if m0 < 0:
        raise InvalidArgumentError("Rest mass must be non-negative", argument="m0", value=m0)
    return math.sqrt(1.0 + (p / (m0 * c)) ** 2)

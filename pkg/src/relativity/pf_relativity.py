"""
Relativistic PF quantities in a single frame.

Lorentz factors, relativistic kinetic energies of particle and field,
the kinematic PF Lorentz factor, the PF speed and the PF interval with
its small-slope truncations.
"""

import logging
import math

import numpy as np

from src.core.constants import EXPANSION_SLOPE_LIMIT, EXPANSION_SLOPE_WARN
from src.core.exceptions import InvalidArgumentError, RegimeError, SuperluminalError

logger = logging.getLogger(__name__)


def _beta_sq(v: float, c: float, quantity: str = "v") -> float:
    if not math.isfinite(v) or abs(v) >= c:
        raise SuperluminalError(v, c, quantity=quantity)
    return (v / c) ** 2


def gamma(v: float, c: float = 1.0) -> float:
    """
    Lorentz factor (1 - v^2/c^2)^(-1/2).

    Raises:
        SuperluminalError: If |v| >= c
    """
    return 1.0 / math.sqrt(1.0 - _beta_sq(v, c))


def rel_kinetic_particle(v_p: float, m0: float, c: float = 1.0) -> float:
    """
    K_rP = m0 c^2 (gamma_p - 1), computed without cancellation at small v.
    """
    if m0 < 0:
        raise InvalidArgumentError("Rest mass must be non-negative", argument="m0", value=m0)
    beta_sq = _beta_sq(v_p, c, "v_p")
    root = math.sqrt(1.0 - beta_sq)
    # gamma - 1 = beta^2 / (root (1 + root))
    return m0 * c * c * beta_sq / (root * (1.0 + root))


def rel_kinetic_field(v_p: float, m0: float, chi_slope: float, c: float = 1.0) -> float:
    """K_rF = K_rP chi'^2."""
    return rel_kinetic_particle(v_p, m0, c) * chi_slope * chi_slope


def rel_kinetic_pf(v_p: float, m0: float, chi_slope: float, c: float = 1.0) -> float:
    """K_rPF = K_rP + K_rF = m0 c^2 (gamma_PF - 1)."""
    return rel_kinetic_particle(v_p, m0, c) * (1.0 + chi_slope * chi_slope)


def gamma_pf_kinematic(gamma_p: float, chi_slope: float) -> float:
    """
    Kinematic PF Lorentz factor gamma_PF = (gamma_p - 1)(1 + chi'^2) + 1.

    Raises:
        InvalidArgumentError: If gamma_p < 1
    """
    if not gamma_p >= 1.0:
        raise InvalidArgumentError("gamma_p must be >= 1", argument="gamma_p", value=gamma_p)
    return (gamma_p - 1.0) * (1.0 + chi_slope * chi_slope) + 1.0


def pf_speed_relativistic(gamma_p: float, chi_slope: float, c: float = 1.0) -> float:
    """
    PF speed q' = c (1 - gamma_PF^-2)^(1/2).

    Always in [0, c); tends to c as gamma_p grows. The exponent is +1/2:
    inverting gamma_PF = (1 - q'^2/c^2)^(-1/2) gives this form.
    Once gamma_PF^-2 drops below the float resolution of 1 the result is
    the largest float below c; pf_speed_deficit keeps the digits there.
    """
    g_pf = gamma_pf_kinematic(gamma_p, chi_slope)
    speed = c * math.sqrt(1.0 - 1.0 / (g_pf * g_pf))
    return min(speed, math.nextafter(c, 0.0))


def pf_speed_deficit(gamma_p: float, chi_slope: float) -> float:
    """
    1 - q'/c without cancellation, u / (1 + sqrt(1 - u)) with u = gamma_PF^-2.

    Leading order 1 / (2 gamma_PF^2).
    """
    g_pf = gamma_pf_kinematic(gamma_p, chi_slope)
    u = 1.0 / (g_pf * g_pf)
    return u / (1.0 + math.sqrt(1.0 - u))


def interval_unprimed(dt: float, gamma_p: float, chi_slope: float, c: float = 1.0) -> float:
    """
    PF interval in the unprimed frame, ds^2 = c^2 dt^2 / [(gamma_p - 1)(1 + chi'^2) + 1]^2.

    Equal to c^2 dt^2 (1 - q'^2/c^2).
    """
    if not math.isfinite(dt):
        raise InvalidArgumentError("dt must be finite", argument="dt", value=dt)
    g_pf = gamma_pf_kinematic(gamma_p, chi_slope)
    return (c * dt / g_pf) ** 2


def expansion_interval(dt: float, gamma_like: float, slope_like: float, c: float = 1.0) -> float:
    """
    Second-order small-slope form c^2 dt^2 gamma^-2 [1 - 2 slope^2].

    With slope = chi' sqrt((gamma_p - 1)/gamma_p) this is the truncated
    unprimed interval; slope = chi' gives its large-gamma_p form; with
    gamma = a gamma_PF and slope = b gamma_PF it is the primed form.

    Raises:
        RegimeError: If |slope| exceeds the small-slope limit
    """
    if abs(slope_like) > EXPANSION_SLOPE_LIMIT:
        raise RegimeError(
            f"Truncated interval needs |slope| <= {EXPANSION_SLOPE_LIMIT}",
            quantity="slope",
            value=slope_like,
        )
    if abs(slope_like) > EXPANSION_SLOPE_WARN:
        logger.warning(f"slope={slope_like:.4g} is large for the second-order truncation")
    return (c * dt / gamma_like) ** 2 * (1.0 - 2.0 * slope_like * slope_like)


def free_photon_trajectory(ts, q0: float = 0.0, c: float = 1.0) -> np.ndarray:
    """Free photonic PF system: straight line q(t) = q0 + c t, whatever chi is."""
    return q0 + c * np.asarray(ts, dtype=float)

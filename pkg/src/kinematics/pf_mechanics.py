"""
Non-relativistic PF mechanics.

Field velocity and force, PF arc-length position, PF speed and force,
and energy bookkeeping for a particle moving in a stationary field chi(x).
Every function is pure; the field profile does the domain checking.
"""

import logging
import math
import warnings
from typing import Optional

import numpy as np
from scipy.integrate import quad, IntegrationWarning

from src.core.constants import FieldKind, QUAD_ABS_TOL, QUAD_LIMIT
from src.core.exceptions import FieldDomainError, NumericalFailureError
from src.core.schemas import EnergyBreakdown, ParticleState, PFCoupling
from src.field.profiles import FieldProfile

logger = logging.getLogger(__name__)

DEFAULT_COUPLING = PFCoupling()


def field_velocity(state: ParticleState, profile: FieldProfile) -> float:
    """v_F = |chi'(x)| |v_P|."""
    return abs(profile.evaluate(state.x, 1)) * abs(state.v_p)


def field_force(state: ParticleState, f_p: float, profile: FieldProfile) -> float:
    """
    Force on the field, f_F = m v_P^2 d|chi'|/dx + |chi'| f_P.

    d|chi'|/dx is sign(chi') chi'' (zero where chi' = 0).
    """
    slope = profile.evaluate(state.x, 1)
    return state.m * state.v_p ** 2 * profile.abs_slope_derivative(state.x) + abs(slope) * f_p


def pf_position(
    x: float,
    profile: FieldProfile,
    g: PFCoupling = DEFAULT_COUPLING,
    x_ref: Optional[float] = None,
) -> float:
    """
    PF position q = g_PF * integral from x_ref to x of sqrt(1 + chi'^2) dx.

    q(x_ref) = 0. The result carries the sign of x - x_ref.

    Args:
        x: End point
        profile: Field profile
        g: PF coupling
        x_ref: Reference point; defaults to the left domain edge (0 if unbounded)

    Raises:
        FieldDomainError: If [x_ref, x] leaves the domain
        NumericalFailureError: If adaptive quadrature does not converge
    """
    if x_ref is None:
        x_ref = profile.domain[0] if math.isfinite(profile.domain[0]) else 0.0
    for point in (x_ref, x):
        if not profile.contains(point):
            raise FieldDomainError(point, profile.domain)

    if x == x_ref:
        return 0.0

    # Constant slope: the integrand is constant
    if profile.kind == FieldKind.ZERO:
        return g.g_pf * (x - x_ref)
    if profile.kind == FieldKind.LINEAR:
        return g.g_pf * math.sqrt(1.0 + profile.slope ** 2) * (x - x_ref)

    def integrand(s: float) -> float:
        return math.sqrt(1.0 + profile.evaluate(s, 1) ** 2)

    with warnings.catch_warnings():
        warnings.simplefilter("error", IntegrationWarning)
        try:
            value, abserr = quad(integrand, x_ref, x, epsabs=QUAD_ABS_TOL, epsrel=0.0, limit=QUAD_LIMIT)
        except IntegrationWarning as e:
            raise NumericalFailureError(
                "Arc-length quadrature did not converge",
                details={"x_ref": x_ref, "x": x, "reason": str(e)},
            )

    logger.debug(f"pf_position x_ref={x_ref} x={x} q={value} err={abserr:.2e}")
    return g.g_pf * value


def pf_speed(state: ParticleState, profile: FieldProfile, g: PFCoupling = DEFAULT_COUPLING) -> float:
    """q' = g_PF sqrt(v_P^2 + v_F^2)."""
    v_f = field_velocity(state, profile)
    return g.g_pf * math.hypot(state.v_p, v_f)


def pf_force(
    state: ParticleState,
    f_p: float,
    profile: FieldProfile,
    g: PFCoupling = DEFAULT_COUPLING,
) -> float:
    """
    PF force f_PF = g_PF [f_P (1 + chi'^2)^(1/2) + m x'^2 chi' chi'' (1 + chi'^2)^(-1/2)].

    Equals m d^2q/dt^2 along a Newtonian trajectory.
    """
    slope = profile.evaluate(state.x, 1)
    curvature = profile.evaluate(state.x, 2)
    root = math.sqrt(1.0 + slope * slope)
    return g.g_pf * (f_p * root + state.m * state.v_p ** 2 * slope * curvature / root)


def energy_decomposition(
    state: ParticleState,
    profile: FieldProfile,
    V_p: float = 0.0,
    E_f: float = 0.0,
) -> EnergyBreakdown:
    """
    Split the PF energy into particle and field parts.

    K_p = m v^2 / 2, K_f = K_p chi'^2, E_p = V_p + K_p,
    E_total = V_p + K_p + E_f. The total field energy E_f is an input:
    its potential part has no general functional form.
    """
    slope = profile.evaluate(state.x, 1)
    k_p = 0.5 * state.m * state.v_p ** 2
    k_f = k_p * slope * slope
    e_p = V_p + k_p
    return EnergyBreakdown(K_p=k_p, K_f=k_f, E_p=e_p, E_total=e_p + E_f)


def pf_force_residual(
    ts: np.ndarray,
    qs: np.ndarray,
    f_pf: np.ndarray,
    m: float,
) -> np.ndarray:
    """
    |m q'' - f_PF| / max|f_PF| at interior samples, q'' by central differences.

    End samples get NaN. Assumes uniform time steps.
    """
    ts = np.asarray(ts, dtype=float)
    qs = np.asarray(qs, dtype=float)
    f_pf = np.asarray(f_pf, dtype=float)
    out = np.full(ts.shape, np.nan)
    if ts.size < 3:
        return out
    dt = ts[1] - ts[0]
    q_dd = (qs[:-2] - 2.0 * qs[1:-1] + qs[2:]) / (dt * dt)
    scale = float(np.max(np.abs(f_pf))) or 1.0
    out[1:-1] = np.abs(m * q_dd - f_pf[1:-1]) / scale
    return out

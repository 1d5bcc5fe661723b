"""
Newtonian trajectory integration for PF systems.

Classical fixed-step RK4 for m x'' = f_P(x). For curved fields the PF
position q is accumulated from pf_position over each step, so q inherits
the additivity of the arc-length integral.
"""

import logging
import math
from typing import Optional

import numpy as np

from src.core.constants import FieldKind
from src.core.exceptions import InvalidArgumentError, NumericalFailureError
from src.core.protocols import ForceLaw, PotentialLaw
from src.core.schemas import ParticleState, PFCoupling, TrajectoryRecord
from src.field.profiles import FieldProfile

from .pf_mechanics import DEFAULT_COUPLING, pf_position

logger = logging.getLogger(__name__)

# q is linear in x for these kinds; no need to accumulate
_CONSTANT_SLOPE = (FieldKind.ZERO, FieldKind.LINEAR)


def rk4_step(force_law: ForceLaw, m: float, x: float, v: float, dt: float):
    """One classical Runge-Kutta step for (x, v) with x' = v, v' = f(x) / m."""
    a1 = force_law(x) / m
    x2 = x + 0.5 * dt * v
    v2 = v + 0.5 * dt * a1
    a2 = force_law(x2) / m
    x3 = x + 0.5 * dt * v2
    v3 = v + 0.5 * dt * a2
    a3 = force_law(x3) / m
    x4 = x + dt * v3
    v4 = v + dt * a3
    a4 = force_law(x4) / m
    x_new = x + dt * (v + 2.0 * v2 + 2.0 * v3 + v4) / 6.0
    v_new = v + dt * (a1 + 2.0 * a2 + 2.0 * a3 + a4) / 6.0
    return x_new, v_new


def integrate_particle(
    force_law: ForceLaw,
    state0: ParticleState,
    dt: float,
    n_steps: int,
    profile: FieldProfile,
    g: PFCoupling = DEFAULT_COUPLING,
    potential: Optional[PotentialLaw] = None,
    x_ref: Optional[float] = None,
    sample_every: int = 1,
) -> TrajectoryRecord:
    """
    Integrate m x'' = f_P(x) and record t, x, v, q and the particle energy.

    Args:
        force_law: Particle force f_P(x)
        state0: Initial position, velocity and mass
        dt: Time step (> 0)
        n_steps: Number of steps; 0 returns the initial sample only
        profile: Field profile chi(x)
        g: PF coupling
        potential: Optional V_P(x); energy column is m v^2 / 2 + V_P(x)
        x_ref: Reference point with q(x_ref) = 0 (default: domain left edge)
        sample_every: Record every k-th step (the last step is always kept)

    Returns:
        TrajectoryRecord; exited_domain is set and the record is partial
        if the particle leaves the field domain

    Raises:
        InvalidArgumentError: If dt <= 0, n_steps < 0 or sample_every < 1
        NumericalFailureError: If the state becomes non-finite
    """
    if not (math.isfinite(dt) and dt > 0):
        raise InvalidArgumentError("Time step must be positive", argument="dt", value=dt)
    if n_steps < 0:
        raise InvalidArgumentError("n_steps must be non-negative", argument="n_steps", value=n_steps)
    if sample_every < 1:
        raise InvalidArgumentError("sample_every must be >= 1", argument="sample_every", value=sample_every)

    m = state0.m
    x, v = state0.x, state0.v_p
    q = pf_position(x, profile, g, x_ref)

    def energy(x_: float, v_: float) -> float:
        kinetic = 0.5 * m * v_ * v_
        return kinetic + potential(x_) if potential is not None else kinetic

    ts, xs, vs, qs, es = [0.0], [x], [v], [q], [energy(x, v)]
    exited = False

    for step in range(1, n_steps + 1):
        x_new, v_new = rk4_step(force_law, m, x, v, dt)

        if not (math.isfinite(x_new) and math.isfinite(v_new)):
            raise NumericalFailureError(
                "Non-finite particle state during integration",
                iterations=step,
                details={"x": x_new, "v": v_new, "t": step * dt},
            )
        if not profile.contains(x_new):
            logger.warning(
                f"Particle left the field domain {profile.domain} at t={step * dt:.6g} (x={x_new:.6g}); "
                f"returning partial trajectory"
            )
            exited = True
            break

        if profile.kind in _CONSTANT_SLOPE:
            q = pf_position(x_new, profile, g, x_ref)
        else:
            q += pf_position(x_new, profile, g, x_ref=x)
        x, v = x_new, v_new

        if step % sample_every == 0 or step == n_steps:
            ts.append(step * dt)
            xs.append(x)
            vs.append(v)
            qs.append(q)
            es.append(energy(x, v))

    record = TrajectoryRecord(
        ts=np.array(ts),
        xs=np.array(xs),
        vs=np.array(vs),
        qs=np.array(qs),
        energy=np.array(es),
        exited_domain=exited,
        metadata={
            "dt": dt,
            "n_steps": n_steps,
            "sample_every": sample_every,
            "g_pf": g.g_pf,
            "m": m,
            "field": profile.kind.value,
        },
    )
    logger.info(f"Integrated {len(record)} samples (exited_domain={exited})")
    return record

"""
Tests for non-relativistic PF mechanics and the RK4 trajectory integrator.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.core.exceptions import FieldDomainError, InvalidArgumentError
from src.core.schemas import ParticleState, PFCoupling
from src.field import FieldProfile, box_eigenfield
from src.kinematics import (
    energy_decomposition,
    field_force,
    field_velocity,
    integrate_particle,
    pf_force,
    pf_force_residual,
    pf_position,
    pf_speed,
    rk4_step,
)

UNIT = PFCoupling(1.0)


def harmonic(x):
    return -x


# ---------------------------------------------------------------------------
# Field velocity and force
# ---------------------------------------------------------------------------


def test_field_velocity():
    assert field_velocity(ParticleState(x=0.0, v_p=3.0), FieldProfile.linear(2.0)) == 6.0
    box = box_eigenfield(1, math.pi)
    assert field_velocity(ParticleState(x=math.pi / 2, v_p=1.0), box) == pytest.approx(0.0, abs=1e-15)


def test_field_force_constant_slope():
    state = ParticleState(x=0.4, v_p=2.0, m=3.0)
    assert field_force(state, 1.5, FieldProfile.linear(-2.0)) == 3.0
    assert field_force(state, 1.5, FieldProfile.zero()) == 0.0


def test_field_force_matches_finite_difference_of_abs_slope():
    profile = FieldProfile.sine(0.01, 1.0)
    x, h = math.pi / 4, 1e-5
    d_abs_slope = (abs(profile.evaluate(x + h, 1)) - abs(profile.evaluate(x - h, 1))) / (2 * h)
    state = ParticleState(x=x, v_p=1.0, m=1.0)
    assert field_force(state, 0.0, profile) == pytest.approx(d_abs_slope, rel=1e-6)


# ---------------------------------------------------------------------------
# PF position
# ---------------------------------------------------------------------------


def test_pf_position_closed_forms():
    assert pf_position(2.0, FieldProfile.zero(), UNIT, x_ref=0.0) == 2.0
    assert pf_position(1.0, FieldProfile.linear(1.0), UNIT, x_ref=0.0) == pytest.approx(math.sqrt(2.0), rel=1e-15)
    assert pf_position(-1.0, FieldProfile.linear(1.0), UNIT, x_ref=0.0) < 0


def test_pf_position_sine_matches_riemann_sum():
    """Arc length of sin(x) over one period against a dense midpoint sum."""
    profile = FieldProfile.sine(1.0, 1.0)
    n = 10 ** 6
    width = 2.0 * math.pi
    mids = (np.arange(n) + 0.5) * (width / n)
    brute = float(np.sum(np.sqrt(1.0 + np.cos(mids) ** 2)) * (width / n))
    assert pf_position(width, profile, UNIT, x_ref=0.0) == pytest.approx(brute, rel=1e-8)


def test_pf_position_is_additive():
    profile = FieldProfile.sine(0.8, 1.7)
    whole = pf_position(2.5, profile, UNIT, x_ref=0.0)
    parts = pf_position(1.1, profile, UNIT, x_ref=0.0) + pf_position(2.5, profile, UNIT, x_ref=1.1)
    assert abs(whole - parts) <= 1e-9


@settings(max_examples=30, deadline=None)
@given(
    x1=st.floats(min_value=0.0, max_value=3.0),
    dx=st.floats(min_value=0.0, max_value=3.0),
    g=st.floats(min_value=0.1, max_value=5.0),
)
def test_pf_position_monotone_and_linear_in_coupling(x1, dx, g):
    profile = FieldProfile.sine(0.5, 2.0)
    q1 = pf_position(x1, profile, UNIT, x_ref=0.0)
    q2 = pf_position(x1 + dx, profile, UNIT, x_ref=0.0)
    assert q2 >= q1 - 1e-12
    assert pf_position(x1, profile, PFCoupling(g), x_ref=0.0) == pytest.approx(g * q1, rel=1e-12, abs=1e-12)


def test_pf_position_outside_domain():
    with pytest.raises(FieldDomainError):
        pf_position(4.0, box_eigenfield(1, math.pi), UNIT, x_ref=0.0)


# ---------------------------------------------------------------------------
# PF speed and force
# ---------------------------------------------------------------------------


def test_pf_speed_examples():
    assert pf_speed(ParticleState(x=0.0, v_p=-2.0), FieldProfile.zero(), PFCoupling(3.0)) == 6.0
    assert pf_speed(ParticleState(x=0.0, v_p=1.0), FieldProfile.linear(1.0)) == pytest.approx(math.sqrt(2.0))
    assert pf_speed(ParticleState(x=1.0, v_p=0.0), FieldProfile.sine(2.0, 3.0)) == 0.0


@settings(max_examples=50, deadline=None)
@given(
    x=st.floats(min_value=-5.0, max_value=5.0),
    v=st.floats(min_value=-10.0, max_value=10.0),
    g=st.floats(min_value=0.1, max_value=3.0),
)
def test_pf_speed_at_least_particle_speed(x, v, g):
    speed = pf_speed(ParticleState(x=x, v_p=v), FieldProfile.sine(1.3, 0.7), PFCoupling(g))
    assert speed >= g * abs(v) * (1 - 1e-15)


def test_pf_force_examples():
    state = ParticleState(x=0.2, v_p=1.0)
    assert pf_force(state, 2.5, FieldProfile.zero(), PFCoupling(2.0)) == 5.0
    assert pf_force(state, 2.0, FieldProfile.linear(1.0)) == pytest.approx(2.0 * math.sqrt(2.0), rel=1e-15)


def test_energy_decomposition():
    at_rest = energy_decomposition(ParticleState(x=0.0, v_p=0.0), FieldProfile.linear(1.0), V_p=2.0, E_f=3.0)
    assert at_rest.K_p == at_rest.K_f == 0.0
    assert at_rest.E_total == 5.0

    moving = energy_decomposition(ParticleState(x=0.0, v_p=math.sqrt(10.0)), FieldProfile.linear(1.0))
    assert moving.K_p == pytest.approx(5.0)
    assert moving.K_f == pytest.approx(5.0)

    flat = energy_decomposition(ParticleState(x=0.0, v_p=2.0), FieldProfile.zero(), V_p=1.0, E_f=0.5)
    assert flat.K_f == 0.0
    assert flat.E_total == flat.E_p + 0.5


# ---------------------------------------------------------------------------
# Integrator
# ---------------------------------------------------------------------------


def test_free_particle():
    record = integrate_particle(lambda x: 0.0, ParticleState(x=0.0, v_p=1.0), 0.01, 100, FieldProfile.zero())
    np.testing.assert_allclose(record.xs, 0.01 * np.arange(101), rtol=0, atol=1e-12)
    # zero field: q is x
    np.testing.assert_allclose(record.qs, record.xs, rtol=0, atol=1e-12)


def test_harmonic_one_period():
    dt = 1e-3
    steps = int(round(2.0 * math.pi / dt))
    record = integrate_particle(harmonic, ParticleState(x=1.0, v_p=0.0), dt, steps, FieldProfile.zero())
    assert record.xs[-1] == pytest.approx(math.cos(record.ts[-1]), abs=1e-8)


def test_harmonic_energy_drift_over_many_periods():
    dt = 0.02
    steps = int(round(1000 * 2.0 * math.pi / dt))
    record = integrate_particle(
        harmonic,
        ParticleState(x=1.0, v_p=0.0),
        dt,
        steps,
        FieldProfile.zero(),
        potential=lambda x: 0.5 * x * x,
        sample_every=1000,
    )
    drift = abs(record.energy[-1] - record.energy[0]) / record.energy[0]
    assert drift <= 1e-6


def test_rk4_is_fourth_order():
    """Halving dt cuts the endpoint error by about 16."""

    def endpoint_error(dt):
        x, v = 1.0, 0.0
        steps = int(round(2.0 / dt))
        for _ in range(steps):
            x, v = rk4_step(harmonic, 1.0, x, v, dt)
        return abs(x - math.cos(steps * dt))

    ratio = endpoint_error(0.1) / endpoint_error(0.05)
    assert 12.0 <= ratio <= 20.0


def test_force_residual_along_box_eigenfield_trajectory():
    """m q'' by central differences matches f_PF on a curved field."""
    profile = box_eigenfield(1, math.pi)
    center = math.pi / 2

    def force(x):
        return -(x - center)

    state0 = ParticleState(x=center - 0.5, v_p=0.0)
    record = integrate_particle(force, state0, 1e-3, 2000, profile)
    assert not record.exited_domain
    f_pf = np.array([pf_force(ParticleState(x=x, v_p=v), force(x), profile) for x, v in zip(record.xs, record.vs)])
    residual = pf_force_residual(record.ts, record.qs, f_pf, 1.0)
    assert np.isnan(residual[0]) and np.isnan(residual[-1])
    assert np.nanmax(residual) <= 1e-4


def test_classical_reduction_for_flat_field():
    """chi' = 0: f_PF / g equals f_P and q - q_ref equals x - x_ref."""
    g = PFCoupling(2.5)
    state = ParticleState(x=1.2, v_p=-0.7)
    assert pf_force(state, 0.9, FieldProfile.zero(), g) / g.g_pf == pytest.approx(0.9, rel=1e-15)
    assert pf_position(3.0, FieldProfile.zero(), PFCoupling(1.0), x_ref=1.2) == 3.0 - 1.2


def test_domain_exit_returns_partial_record():
    profile = box_eigenfield(1, math.pi)
    record = integrate_particle(lambda x: 0.0, ParticleState(x=1.5, v_p=10.0), 0.01, 1000, profile)
    assert record.exited_domain
    assert len(record) < 1001
    assert record.xs.max() <= math.pi


def test_sampling_keeps_last_step():
    record = integrate_particle(lambda x: 0.0, ParticleState(x=0.0, v_p=1.0), 0.1, 7, FieldProfile.zero(), sample_every=3)
    np.testing.assert_allclose(record.ts, [0.0, 0.3, 0.6, 0.7])


@pytest.mark.parametrize("dt, steps, every", [(0.0, 10, 1), (-1.0, 10, 1), (0.1, -1, 1), (0.1, 10, 0)])
def test_integrator_rejects_bad_arguments(dt, steps, every):
    with pytest.raises(InvalidArgumentError):
        integrate_particle(lambda x: 0.0, ParticleState(x=0.0, v_p=1.0), dt, steps, FieldProfile.zero(), sample_every=every)

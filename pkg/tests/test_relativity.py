"""
Tests for relativistic PF quantities, frame matching and the invariance verifier.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.core.exceptions import InvalidArgumentError, RegimeError, SuperluminalError
from src.core.schemas import Event, FrameContext
from src.relativity import (
    VerifierSettings,
    ab_factors,
    delta_full,
    delta_truncated,
    expansion_interval,
    free_photon_trajectory,
    gamma,
    gamma_pf_kinematic,
    gamma_pf_matching,
    gamma_pf_second_order,
    interval_primed,
    interval_unprimed,
    lorentz_boost,
    make_frame_context,
    matching_residual,
    pf_speed_deficit,
    pf_speed_relativistic,
    quartic_scaling,
    rel_kinetic_field,
    rel_kinetic_particle,
    rel_kinetic_pf,
    run_verifier,
    velocity_addition,
)

speeds = st.floats(min_value=-0.9, max_value=0.9)
small_slopes = st.floats(min_value=-0.1, max_value=0.1)


# ---------------------------------------------------------------------------
# Single frame
# ---------------------------------------------------------------------------


def test_gamma_examples():
    assert gamma(0.0) == 1.0
    assert gamma(0.6) == pytest.approx(1.25, rel=1e-15)
    assert gamma(0.6 * 3.0, c=3.0) == pytest.approx(1.25, rel=1e-15)
    with pytest.raises(SuperluminalError):
        gamma(1.0)
    with pytest.raises(SuperluminalError):
        gamma(-1.5)


def test_kinetic_energies():
    assert rel_kinetic_particle(0.0, 1.0) == 0.0
    assert rel_kinetic_particle(0.6, 1.0) == pytest.approx(0.25, rel=1e-14)
    assert rel_kinetic_particle(0.99, 0.0) == 0.0
    assert rel_kinetic_field(0.6, 1.0, 0.0) == 0.0
    assert rel_kinetic_field(0.6, 1.0, 1.0) == rel_kinetic_particle(0.6, 1.0)
    assert rel_kinetic_field(0.6, 1.0, 2.0) == pytest.approx(1.0, rel=1e-14)
    with pytest.raises(InvalidArgumentError):
        rel_kinetic_particle(0.5, -1.0)


def test_kinetic_energy_small_speed_has_no_cancellation():
    v = 1e-8
    assert rel_kinetic_particle(v, 1.0) == pytest.approx(0.5 * v * v, rel=1e-10)


@settings(max_examples=50, deadline=None)
@given(v=speeds, slope=st.floats(min_value=-3.0, max_value=3.0))
def test_pf_kinetic_energy_matches_gamma_pf(v, slope):
    """K_rPF = m0 c^2 (gamma_PF - 1)."""
    expected = gamma_pf_kinematic(gamma(v), slope) - 1.0
    assert rel_kinetic_pf(v, 1.0, slope) == pytest.approx(expected, rel=1e-12, abs=1e-14)


def test_gamma_pf_kinematic_examples():
    assert gamma_pf_kinematic(1.0, 5.0) == 1.0
    assert gamma_pf_kinematic(2.0, 1.0) == 3.0
    assert gamma_pf_kinematic(7.5, 0.0) == 7.5
    with pytest.raises(InvalidArgumentError):
        gamma_pf_kinematic(0.5, 0.0)


def test_pf_speed_examples():
    assert pf_speed_relativistic(1.0, 3.0) == 0.0
    assert pf_speed_relativistic(2.0, 1.0) == pytest.approx(2.0 * math.sqrt(2.0) / 3.0, rel=1e-15)
    assert abs(pf_speed_relativistic(1e6, 0.5) - 1.0) <= 1e-12


@settings(max_examples=10_000, deadline=None)
@given(
    gamma_p=st.floats(min_value=1.0, max_value=1e12),
    slope=st.floats(min_value=-5.0, max_value=5.0),
)
def test_pf_speed_is_subluminal(gamma_p, slope):
    speed = pf_speed_relativistic(gamma_p, slope, c=2.0)
    assert 0.0 <= speed < 2.0


@pytest.mark.parametrize("gamma_p", [1e9, 1e12, 1e100])
@pytest.mark.parametrize("c", [1.0, 2.99792458e8])
def test_pf_speed_stays_below_c_at_large_gamma(gamma_p, c):
    speed = pf_speed_relativistic(gamma_p, 0.0, c)
    assert speed < c
    assert speed == math.nextafter(c, 0.0)
    assert pf_speed_deficit(gamma_p, 0.0) > 0.0


@settings(max_examples=100, deadline=None)
@given(
    gamma_p=st.floats(min_value=1.0, max_value=1e12),
    slope=st.floats(min_value=-5.0, max_value=5.0),
)
def test_speed_deficit_bound(gamma_p, slope):
    """1 - q'/c sits just above 1/(2 gamma_PF^2): the bound holds to leading order."""
    g_pf = gamma_pf_kinematic(gamma_p, slope)
    bound = 0.5 / g_pf ** 2
    deficit = pf_speed_deficit(gamma_p, slope)
    assert bound * (1 - 1e-12) <= deficit <= bound * (1.0 + 1.0 / g_pf ** 2)


def test_interval_unprimed_examples():
    assert interval_unprimed(1.0, 2.0, 1.0) == pytest.approx(1.0 / 9.0, rel=1e-15)
    assert interval_unprimed(0.3, 1.0, 4.0, c=2.0) == pytest.approx(0.36, rel=1e-15)
    v = 0.6
    assert interval_unprimed(2.0, gamma(v), 0.0) == pytest.approx(4.0 * (1 - v * v), rel=1e-14)
    with pytest.raises(InvalidArgumentError):
        interval_unprimed(float("nan"), 2.0, 0.0)


@settings(max_examples=100, deadline=None)
@given(
    dt=st.floats(min_value=0.01, max_value=10.0),
    gamma_p=st.floats(min_value=1.0, max_value=10.0),
    slope=st.floats(min_value=-1.0, max_value=1.0),
)
def test_interval_unprimed_matches_pf_speed(dt, gamma_p, slope):
    """ds^2 = c^2 dt^2 - (q' dt)^2."""
    q_dot = pf_speed_relativistic(gamma_p, slope)
    expected = dt * dt - (q_dot * dt) ** 2
    assert interval_unprimed(dt, gamma_p, slope) == pytest.approx(expected, rel=1e-12)


def test_expansion_interval():
    assert expansion_interval(1.0, 2.0, 0.0) == 0.25
    assert expansion_interval(1.0, 1.0, 0.01) == pytest.approx(1.0 - 2e-4, rel=1e-15)
    with pytest.raises(RegimeError):
        expansion_interval(1.0, 1.0, 0.11)


@pytest.mark.parametrize("gamma_p", [10.0, 100.0, 1e4])
@pytest.mark.parametrize("slope", [0.001, 0.005, 0.01])
def test_expansion_interval_truncation_error(gamma_p, slope):
    """Second-order form stays within 4 chi'^4 / gamma_p^2 of the full interval."""
    full = interval_unprimed(1.0, gamma_p, slope)
    truncated = expansion_interval(1.0, gamma_p, slope * math.sqrt((gamma_p - 1.0) / gamma_p))
    assert abs(full - truncated) <= 4.0 * slope ** 4 / gamma_p ** 2


def test_expansion_interval_warns_for_larger_slopes(caplog):
    with caplog.at_level("WARNING"):
        expansion_interval(1.0, 1.0, 0.07)
    assert "large for the second-order truncation" in caplog.text


def test_free_photon_trajectory():
    ts = np.linspace(0.0, 2.0, 5)
    np.testing.assert_allclose(free_photon_trajectory(ts, q0=1.0, c=3.0), 1.0 + 3.0 * ts)


# ---------------------------------------------------------------------------
# Boosts and velocity addition
# ---------------------------------------------------------------------------


def test_boost_examples():
    event = Event(t=1.0, q=0.0)
    boosted = lorentz_boost(event, 0.6)
    assert boosted.t == pytest.approx(1.25, rel=1e-15)
    assert boosted.q == pytest.approx(-0.75, rel=1e-15)
    assert lorentz_boost(Event(t=2.0, q=-3.0), 0.0) == Event(t=2.0, q=-3.0)


@settings(max_examples=100, deadline=None)
@given(
    t=st.floats(min_value=-10.0, max_value=10.0),
    q=st.floats(min_value=-10.0, max_value=10.0),
    v=speeds,
)
def test_boost_group_and_invariance(t, q, v):
    event = Event(t=t, q=q)
    boosted = lorentz_boost(event, v)
    back = lorentz_boost(boosted, -v)
    scale = max(1.0, abs(t), abs(q))
    assert abs(back.t - t) <= 1e-12 * scale
    assert abs(back.q - q) <= 1e-12 * scale

    s2 = t * t - q * q
    s2_boosted = boosted.t ** 2 - boosted.q ** 2
    assert abs(s2 - s2_boosted) <= 1e-12 * gamma(v) ** 2 * (t * t + q * q + 1.0)


def test_velocity_addition_examples():
    assert velocity_addition(0.0, 0.3) == 0.3
    assert velocity_addition(0.5, 0.5) == pytest.approx(0.8, rel=1e-15)
    assert abs(velocity_addition(1.0 - 1e-15, 1.0 - 1e-15)) < 1.0
    with pytest.raises(SuperluminalError):
        velocity_addition(1.0, 0.2)


@settings(max_examples=100, deadline=None)
@given(u=st.floats(min_value=-0.999999, max_value=0.999999), v=st.floats(min_value=-0.999999, max_value=0.999999))
def test_velocity_addition_is_subluminal(u, v):
    assert abs(velocity_addition(u, v)) < 1.0


# ---------------------------------------------------------------------------
# Frame pairs and matching
# ---------------------------------------------------------------------------


def test_ab_factors_examples():
    rest = FrameContext(v_p=0.0, v_p_prime=0.0, v_pf=0.0, chi_slope_primed=0.05, chi_slope=0.05)
    assert ab_factors(rest).a == 1.0
    moving = FrameContext(v_p=0.6, v_p_prime=0.0, v_pf=0.6, chi_slope_primed=0.0, chi_slope=0.0)
    factors = ab_factors(moving)
    assert factors.a == pytest.approx(0.8, rel=1e-14)
    assert factors.b == 0.0


def test_make_frame_context_is_consistent():
    ctx = make_frame_context(0.4, -0.7, 0.08)
    assert abs(ctx.v_p - velocity_addition(0.4, -0.7)) <= 1e-12
    expected_slope = gamma_pf_matching(ctx) * 0.08 * (1.0 + 0.7 * 0.4)
    assert ctx.chi_slope == pytest.approx(expected_slope, rel=1e-12)


def test_matching_at_rest_is_one():
    for slope in (0.0, 0.05, 0.3, 0.6):
        ctx = FrameContext(v_p=0.0, v_p_prime=0.0, v_pf=0.0, chi_slope_primed=slope, chi_slope=slope)
        assert gamma_pf_matching(ctx) == pytest.approx(1.0, rel=1e-15)


@settings(max_examples=200, deadline=None)
@given(v_p_prime=speeds, v_pf=speeds, slope=small_slopes)
def test_matching_residual_vanishes(v_p_prime, v_pf, slope):
    ctx = make_frame_context(v_p_prime, v_pf, slope)
    g_pf = gamma_pf_matching(ctx)
    assert abs(matching_residual(ctx, g_pf)) <= 1e-12 * gamma(v_p_prime) ** 2


@settings(max_examples=100, deadline=None)
@given(v_p_prime=speeds, v_pf=speeds)
def test_classical_reduction(v_p_prime, v_pf):
    """Flat field: gamma_PF a = gamma'_p, the usual gamma composition."""
    ctx = make_frame_context(v_p_prime, v_pf, 0.0)
    g_pf = gamma_pf_matching(ctx)
    gamma_p_prime = gamma(v_p_prime)
    assert abs(g_pf * ab_factors(ctx).a - gamma_p_prime) <= 1e-12 * gamma_p_prime
    direct = gamma_p_prime / (gamma(ctx.v_p) * (1.0 - ctx.v_p * v_pf))
    assert abs(matching_residual(ctx, direct)) <= 1e-12 * gamma_p_prime ** 2


def test_perturbed_matching_gives_positive_residual():
    ctx = make_frame_context(0.5, 0.3, 0.05)
    g_pf = gamma_pf_matching(ctx)
    residual = matching_residual(ctx, 1.01 * g_pf)
    assert residual == pytest.approx(0.0201 * gamma(0.5) ** 2, rel=1e-10)


def test_as_printed_bracket_agrees_without_primed_motion():
    ctx = make_frame_context(0.0, 0.6, 0.07)
    assert gamma_pf_matching(ctx, as_printed=True) == pytest.approx(gamma_pf_matching(ctx), rel=1e-15)
    moving = make_frame_context(0.5, 0.6, 0.07)
    assert gamma_pf_matching(moving, as_printed=True) != pytest.approx(gamma_pf_matching(moving), rel=1e-6)


def test_matching_rejects_steep_slopes():
    ctx = FrameContext(v_p=0.9, v_p_prime=0.0, v_pf=0.0, chi_slope_primed=0.9, chi_slope=0.9)
    with pytest.raises(RegimeError) as excinfo:
        gamma_pf_matching(ctx)
    assert excinfo.value.quantity == "matching_bracket"


def test_interval_primed_examples():
    flat = make_frame_context(0.3, 0.5, 0.0)
    g_pf = gamma_pf_matching(flat)
    a = ab_factors(flat).a
    assert interval_primed(1.0, flat, g_pf) == pytest.approx(1.0 / (g_pf * a) ** 2, rel=1e-14)

    sloped = make_frame_context(0.3, 0.5, 0.08)
    unit = 1.0 / ab_factors(sloped).a
    assert interval_primed(2.0, sloped, unit) == pytest.approx(4.0, rel=1e-14)


def test_interval_primed_reports_bracket_out_of_regime():
    ctx = make_frame_context(0.3, 0.5, 0.05)
    with pytest.raises(RegimeError) as excinfo:
        interval_primed(1.0, ctx, 0.5 / ab_factors(ctx).a)
    assert "bracket" in excinfo.value.details


@settings(max_examples=100, deadline=None)
@given(v_p_prime=speeds, v_pf=speeds, slope=small_slopes)
def test_truncated_forms_agree_with_matched_gamma(v_p_prime, v_pf, slope):
    ctx = make_frame_context(v_p_prime, v_pf, slope)
    assert delta_truncated(ctx) <= 1e-10


def test_second_order_matching_reduces_to_closed_form_on_flat_field():
    ctx = make_frame_context(0.4, 0.2, 0.0)
    assert gamma_pf_second_order(ctx) == pytest.approx(gamma_pf_matching(ctx), rel=1e-12)
    assert delta_full(ctx) <= 1e-12


def test_untruncated_gap_scales_as_fourth_power():
    result = quartic_scaling(0.5, 0.3)
    assert 3.5 <= result["exponent"] <= 4.5
    assert result["constant"] > 0
    deltas = result["deltas"]
    assert all(later < earlier for earlier, later in zip(deltas, deltas[1:]))


# ---------------------------------------------------------------------------
# Verifier
# ---------------------------------------------------------------------------


def test_verifier_passes_default_ranges():
    report, summary = run_verifier(VerifierSettings(seed=0, n_samples=10_000))
    assert len(report) == 10_000
    assert summary.n_out_of_regime == 0
    assert summary.max_matching_residual <= 1e-10
    assert summary.max_delta_truncated <= 1e-10
    assert summary.passed


def test_verifier_is_deterministic_across_worker_counts():
    one, _ = run_verifier(VerifierSettings(seed=42, n_samples=300, workers=1))
    many, _ = run_verifier(VerifierSettings(seed=42, n_samples=300, workers=6))
    other, _ = run_verifier(VerifierSettings(seed=43, n_samples=300, workers=1))
    assert one.equals(many)
    assert not one.equals(other)


def test_verifier_flat_field_reports_classical_deviation():
    _, summary = run_verifier(VerifierSettings(seed=5, n_samples=500, max_slope=0.0))
    assert summary.classical_deviation is not None
    assert summary.classical_deviation <= 1e-12
    assert summary.quartic_constant is None
    assert summary.passed


def test_flat_field_reduction_uses_its_own_tolerance(monkeypatch):
    from src.relativity import verifier

    loose = VerifierSettings(seed=5, n_samples=200, max_slope=0.0, tolerance=1.0)
    _, summary = run_verifier(loose)
    assert summary.metadata["classical_tolerance"] == 1e-12
    assert summary.passed

    monkeypatch.setattr(verifier, "CLASSICAL_REDUCTION_TOLERANCE", -1.0)
    _, summary = run_verifier(loose)
    assert not summary.passed


def test_verifier_warns_when_no_sample_reaches_min_gamma(caplog):
    with caplog.at_level("WARNING"):
        _, summary = run_verifier(VerifierSettings(seed=1, n_samples=50, max_speed=0.5))
    assert summary.n_in_regime == 0
    assert "passes vacuously" in caplog.text


def test_verifier_counts_high_gamma_samples():
    _, summary = run_verifier(VerifierSettings(seed=3, n_samples=3000, max_speed=0.999, min_gamma=10.0))
    assert summary.n_in_regime > 0
    assert summary.max_delta_truncated_in_regime <= 1e-10


@pytest.mark.parametrize(
    "kwargs",
    [{"n_samples": 0}, {"max_speed": 1.0}, {"max_slope": -0.1}, {"workers": 0}],
)
def test_verifier_settings_validation(kwargs):
    with pytest.raises(InvalidArgumentError):
        VerifierSettings(**kwargs)

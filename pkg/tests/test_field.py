"""
Tests for field profiles and their CSV ingest.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.core.exceptions import (
    ConfigurationError,
    FieldDomainError,
    InvalidArgumentError,
    UnsupportedOrderError,
)
from src.field import FieldProfile, box_eigenfield, evaluate, load_profile_csv, read_two_column_csv

STEP = 1e-5

ANALYTIC_PROFILES = [
    FieldProfile.linear(0.7),
    FieldProfile.sine(0.01, 2.0),
    FieldProfile.sine(1.0, 1.0),
    box_eigenfield(3, math.pi, 2.0),
]


def test_linear_slope():
    assert evaluate(FieldProfile.linear(1.0), 0.3, order=1) == 1.0


def test_box_eigenfield_values():
    assert evaluate(box_eigenfield(1, math.pi), math.pi / 2) == pytest.approx(1.0, abs=1e-15)
    assert evaluate(box_eigenfield(1, math.pi), 0.0) == 0.0
    assert evaluate(box_eigenfield(2, 1.0), 0.5) == pytest.approx(0.0, abs=1e-15)
    assert evaluate(box_eigenfield(3, math.pi, 2.0), math.pi / 6) == pytest.approx(2.0, rel=1e-15)


@pytest.mark.parametrize("n", [1, 2, 5, 17])
def test_box_eigenfield_walls_are_exact_zeros(n):
    a = 2.5
    profile = box_eigenfield(n, a)
    assert profile.evaluate(0.0) == 0.0
    assert profile.evaluate(a) == 0.0
    assert profile.evaluate(a, 2) == 0.0


def test_sine_curvature():
    profile = FieldProfile.sine(0.01, 2.0)
    for x in (0.1, 1.3, -4.0):
        assert profile.evaluate(x, 2) == pytest.approx(-0.04 * math.sin(2.0 * x), rel=1e-14)


@pytest.mark.parametrize("profile", ANALYTIC_PROFILES, ids=lambda p: p.kind.value)
def test_analytic_derivatives_match_central_differences(profile):
    """Closed-form slope and curvature agree with central differences at step 1e-5."""
    for x in np.linspace(0.2, 2.9, 12):
        slope = profile.evaluate(x, 1)
        fd_slope = (profile.evaluate(x + STEP) - profile.evaluate(x - STEP)) / (2 * STEP)
        if abs(slope) > 1e-3:
            assert fd_slope == pytest.approx(slope, rel=1e-6)

        curvature = profile.evaluate(x, 2)
        fd_curvature = (profile.evaluate(x + STEP, 1) - profile.evaluate(x - STEP, 1)) / (2 * STEP)
        if abs(curvature) > 1e-3:
            assert fd_curvature == pytest.approx(curvature, rel=1e-6)


def test_sampled_profile_reproduces_analytic_samples():
    """Natural spline through 400 samples of sin(x) on [0, 2 pi]."""
    xs = np.linspace(0.0, 2.0 * math.pi, 400)
    sampled = FieldProfile.sampled(xs, np.sin(xs))
    rng = np.random.default_rng(20240519)
    points = rng.uniform(0.05, 2.0 * math.pi - 0.05, size=100)

    np.testing.assert_allclose(sampled.evaluate(points, 0), np.sin(points), rtol=0, atol=1e-8)
    np.testing.assert_allclose(sampled.evaluate(points, 1), np.cos(points), rtol=0, atol=1e-5)


def test_evaluation_outside_domain_is_an_error():
    profile = box_eigenfield(1, 1.0)
    with pytest.raises(FieldDomainError):
        profile.evaluate(1.0 + 1e-12)
    with pytest.raises(FieldDomainError):
        profile.evaluate(np.array([0.5, -0.1]))

    sampled = FieldProfile.sampled([0.0, 1.0, 2.0, 3.0], [0.0, 1.0, 0.0, 1.0])
    with pytest.raises(FieldDomainError):
        sampled.evaluate(3.5)


def test_unsupported_order():
    with pytest.raises(UnsupportedOrderError):
        FieldProfile.linear(1.0).evaluate(0.0, order=3)


@pytest.mark.parametrize("n, a", [(0, 1.0), (-1, 1.0), (1, 0.0), (2, -3.0)])
def test_box_eigenfield_rejects_bad_arguments(n, a):
    with pytest.raises(InvalidArgumentError):
        box_eigenfield(n, a)


def test_sampled_validation():
    with pytest.raises(InvalidArgumentError):
        FieldProfile.sampled([0.0, 1.0, 2.0], [0.0, 0.0, 0.0])
    with pytest.raises(InvalidArgumentError):
        FieldProfile.sampled([0.0, 2.0, 1.0, 3.0], [0.0, 0.0, 0.0, 0.0])
    with pytest.raises(InvalidArgumentError):
        FieldProfile.sampled([0.0, 1.0, 2.0, 3.0], [0.0, float("nan"), 0.0, 0.0])


@pytest.mark.parametrize("xs", [[], [0.0], [0.0, 1.0], [0.0, 1.0, 2.0]])
def test_sampled_needs_four_points(xs):
    with pytest.raises(InvalidArgumentError, match="at least 4 points"):
        FieldProfile.sampled(xs, [0.0] * len(xs))


@settings(max_examples=50, deadline=None)
@given(x=st.floats(min_value=-10.0, max_value=10.0))
def test_abs_slope_derivative_is_zero_for_constant_slope(x):
    assert FieldProfile.linear(-1.5).abs_slope_derivative(x) == 0.0


def test_csv_loader_with_header(tmp_path):
    path = tmp_path / "chi.csv"
    xs = np.linspace(0.0, 1.0, 11)
    body = "\n".join(f"{x:.17g},{x * x:.17g}" for x in xs)
    path.write_text("x,chi\n" + body + "\n", encoding="utf-8")

    profile = load_profile_csv(path)
    assert profile.domain == (0.0, 1.0)
    assert profile.evaluate(0.5) == pytest.approx(0.25, abs=1e-3)


def test_csv_loader_rejects_unsorted_rows(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("0,0\n2,1\n1,2\n3,3\n", encoding="utf-8")
    with pytest.raises(ConfigurationError):
        read_two_column_csv(path)


def test_csv_loader_missing_file(tmp_path):
    with pytest.raises(ConfigurationError):
        read_two_column_csv(tmp_path / "missing.csv")

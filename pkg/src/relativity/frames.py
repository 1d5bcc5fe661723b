"""
Pairs of PF frames in standard configuration.

Q' moves with v_PF along q_x relative to Q. This module provides the
standard Lorentz machinery (boost, velocity addition), the frame factors
a and b, the primed PF interval and the matching factor gamma_PF that
makes the small-slope expansions of the unprimed and primed intervals
coincide.

Matching bracket:

    B = (1 - 2 s^2) (1 - v_p v_PF / c^2)^2 gamma_p^2
        + 2 gamma'_p^2 s^2 (1 - v'_p v_PF / c^2)^2,      s = dchi/dx'

    gamma_PF = gamma'_p / sqrt(B)

The as_printed variant drops gamma'_p^2 from the second term; it agrees
with the default whenever v'_p = 0 or s = 0.
"""

import logging
import math

from scipy.optimize import brentq

from src.core.exceptions import InvalidArgumentError, RegimeError
from src.core.schemas import ABFactors, Event, FrameContext

from .pf_relativity import gamma

logger = logging.getLogger(__name__)

# Upper bracket for the second-order root, grown from the closed-form value
_ROOT_BRACKET_SPREAD = 4.0
_MAX_BRACKET_EXPANSIONS = 60
_ROOT_XTOL = 1e-15
_ROOT_RTOL = 4.0 * 2.220446049250313e-16


def velocity_addition(u_prime: float, v: float, c: float = 1.0) -> float:
    """
    Relativistic composition (u' + v) / (1 + u' v / c^2), strictly inside (-c, c).

    Raises:
        SuperluminalError: If |u'| >= c or |v| >= c
    """
    gamma(u_prime, c)
    gamma(v, c)
    u = (u_prime + v) / (1.0 + u_prime * v / (c * c))
    if abs(u) >= c:
        # rounding only; the exact composition is subluminal
        u = math.copysign(math.nextafter(c, 0.0), u)
    return u


def lorentz_boost(event: Event, v_pf: float, c: float = 1.0) -> Event:
    """
    Coordinates of an event in the frame moving with v_pf.

    q' = gamma (q - v_pf t), t' = gamma (t - v_pf q / c^2), gamma = gamma(v_pf).
    """
    g = gamma(v_pf, c)
    return Event(
        t=g * (event.t - v_pf * event.q / (c * c)),
        q=g * (event.q - v_pf * event.t),
    )


def _check_context(ctx: FrameContext, c: float) -> None:
    for name in ("v_p", "v_p_prime", "v_pf"):
        gamma(getattr(ctx, name), c)
    if not (math.isfinite(ctx.chi_slope_primed) and math.isfinite(ctx.chi_slope)):
        raise InvalidArgumentError("Field slopes must be finite", details=ctx.to_dict())


def _bracket(ctx: FrameContext, c: float, as_printed: bool) -> float:
    gamma_p = gamma(ctx.v_p, c)
    gamma_p_prime = gamma(ctx.v_p_prime, c)
    s_sq = ctx.chi_slope_primed ** 2
    k1 = 1.0 - ctx.v_p * ctx.v_pf / (c * c)
    k2 = 1.0 - ctx.v_p_prime * ctx.v_pf / (c * c)
    weight = 1.0 if as_printed else gamma_p_prime ** 2
    return (1.0 - 2.0 * s_sq) * k1 * k1 * gamma_p * gamma_p + 2.0 * weight * s_sq * k2 * k2


def gamma_pf_matching(ctx: FrameContext, c: float = 1.0, as_printed: bool = False) -> float:
    """
    Matching factor gamma_PF = gamma'_p / sqrt(B).

    Args:
        ctx: Frame pair
        c: Speed of light
        as_printed: Use the bracket without gamma'_p^2 on the slope term

    Raises:
        RegimeError: If the bracket is not positive
    """
    _check_context(ctx, c)
    bracket = _bracket(ctx, c, as_printed)
    if not bracket > 0:
        raise RegimeError(
            "Matching bracket is not positive; field slope too large",
            quantity="matching_bracket",
            value=bracket,
            details=ctx.to_dict(),
        )
    return gamma(ctx.v_p_prime, c) / math.sqrt(bracket)


def matching_residual(
    ctx: FrameContext,
    gamma_pf: float,
    c: float = 1.0,
    as_printed: bool = False,
) -> float:
    """Signed residual gamma_PF^2 B - gamma'_p^2; zero iff gamma_pf matches."""
    _check_context(ctx, c)
    return gamma_pf * gamma_pf * _bracket(ctx, c, as_printed) - gamma(ctx.v_p_prime, c) ** 2


def make_frame_context(
    v_p_prime: float,
    v_pf: float,
    chi_slope_primed: float,
    c: float = 1.0,
) -> FrameContext:
    """
    Build a consistent FrameContext from primed-frame data.

    v_p follows from velocity addition; the unprimed slope from the chain
    rule dchi/dx = gamma_PF dchi/dx' (1 - v_PF v'_p / c^2) with the
    matching gamma_PF.
    """
    v_p = velocity_addition(v_p_prime, v_pf, c)
    draft = FrameContext(
        v_p=v_p,
        v_p_prime=v_p_prime,
        v_pf=v_pf,
        chi_slope_primed=chi_slope_primed,
        chi_slope=0.0,
    )
    g_pf = gamma_pf_matching(draft, c)
    chi_slope = g_pf * chi_slope_primed * (1.0 - v_pf * v_p_prime / (c * c))
    return FrameContext(
        v_p=v_p,
        v_p_prime=v_p_prime,
        v_pf=v_pf,
        chi_slope_primed=chi_slope_primed,
        chi_slope=chi_slope,
    )


def ab_factors(ctx: FrameContext, c: float = 1.0) -> ABFactors:
    """a = gamma_p (1 - v_p v_PF / c^2), b = dchi/dx' (1 - v_PF v'_p / c^2)."""
    _check_context(ctx, c)
    a = gamma(ctx.v_p, c) * (1.0 - ctx.v_p * ctx.v_pf / (c * c))
    b = ctx.chi_slope_primed * (1.0 - ctx.v_pf * ctx.v_p_prime / (c * c))
    return ABFactors(a=a, b=b)


def interval_primed(dt_prime: float, ctx: FrameContext, gamma_pf: float, c: float = 1.0) -> float:
    """
    PF interval in the primed frame,
    ds^2 = c^2 dt'^2 / [(gamma_PF a - 1)(1 + gamma_PF^2 b^2) + 1]^2.

    Raises:
        RegimeError: If gamma_PF a < 1; the bracket value is attached
    """
    if not math.isfinite(dt_prime):
        raise InvalidArgumentError("dt' must be finite", argument="dt_prime", value=dt_prime)
    factors = ab_factors(ctx, c)
    ga = gamma_pf * factors.a
    bracket = (ga - 1.0) * (1.0 + (gamma_pf * factors.b) ** 2) + 1.0
    if ga < 1.0 - 1e-12:
        raise RegimeError(
            "gamma_PF * a < 1; primed interval bracket can invert",
            quantity="gamma_pf*a",
            value=ga,
            details={"bracket": bracket, **ctx.to_dict()},
        )
    return (c * dt_prime / bracket) ** 2


def gamma_pf_second_order(ctx: FrameContext, c: float = 1.0) -> float:
    """
    Matching factor from the second-order expansions without the
    large-gamma_p simplification.

    Solves
        gamma'_p^-2 [1 - 2 s^2 (gamma'_p - 1)/gamma'_p]
            = (gamma a)^-2 [1 - 2 b^2 gamma^2 (gamma a - 1)/(gamma a)]
    for gamma near the closed-form matching value. With this factor the
    untruncated intervals differ only at fourth order in the slope.

    Raises:
        RegimeError: If no root lies within the search bracket
    """
    factors = ab_factors(ctx, c)
    gamma_p_prime = gamma(ctx.v_p_prime, c)
    s_sq = ctx.chi_slope_primed ** 2
    a, b = factors.a, factors.b
    same_form = 1.0 - 2.0 * s_sq * (gamma_p_prime - 1.0) / gamma_p_prime

    # Both sides multiplied by (gamma a)^2 gamma'_p^2
    def condition(g: float) -> float:
        return (g * a) ** 2 * same_form - gamma_p_prime ** 2 * (1.0 - 2.0 * b * b * g * (g * a - 1.0) / a)

    # condition(0) = -gamma'_p^2 < 0; the condition is a quadratic in g,
    # so there is at most one positive root
    guess = gamma_pf_matching(ctx, c)
    hi = guess * _ROOT_BRACKET_SPREAD
    for _ in range(_MAX_BRACKET_EXPANSIONS):
        if condition(hi) > 0:
            break
        hi *= _ROOT_BRACKET_SPREAD
    else:
        raise RegimeError(
            "Second-order matching has no positive root",
            quantity="gamma_pf",
            value=guess,
            details={"same_form": same_form, "a": a, "b": b, **ctx.to_dict()},
        )
    return brentq(condition, 0.0, hi, xtol=_ROOT_XTOL, rtol=_ROOT_RTOL)


def delta_truncated(ctx: FrameContext, c: float = 1.0) -> float:
    """
    Relative gap between the truncated same-form interval
    gamma'_p^-2 (1 - 2 s^2) and the truncated primed interval
    (a gamma_PF)^-2 (1 - 2 b^2 gamma_PF^2), with gamma_PF from matching.
    """
    factors = ab_factors(ctx, c)
    gamma_p_prime = gamma(ctx.v_p_prime, c)
    g_pf = gamma_pf_matching(ctx, c)
    same_form = (1.0 - 2.0 * ctx.chi_slope_primed ** 2) / gamma_p_prime ** 2
    primed = (1.0 - 2.0 * (factors.b * g_pf) ** 2) / (factors.a * g_pf) ** 2
    return abs(same_form - primed) / abs(same_form)


def delta_full(ctx: FrameContext, c: float = 1.0) -> float:
    """
    Relative gap between the untruncated same-form interval
    1 / [gamma'_p - s^2 + gamma'_p s^2]^2 and the untruncated primed
    interval, with gamma_PF from gamma_pf_second_order.
    """
    gamma_p_prime = gamma(ctx.v_p_prime, c)
    s_sq = ctx.chi_slope_primed ** 2
    same_form = 1.0 / (gamma_p_prime - s_sq + gamma_p_prime * s_sq) ** 2
    g_pf = gamma_pf_second_order(ctx, c)
    primed = interval_primed(1.0 / c, ctx, g_pf, c)
    return abs(same_form - primed) / same_form

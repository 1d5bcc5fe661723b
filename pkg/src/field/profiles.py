"""
Stationary field profiles chi(x).

A FieldProfile is either an analytic preset (zero, linear, sine, box
eigenfield) with closed-form derivatives, or a sampled grid interpolated
by a natural cubic spline. Evaluation outside the profile's domain is an
error, never an extrapolation.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple, Union

import numpy as np
from scipy.interpolate import CubicSpline

from src.core.constants import FieldKind, MIN_SAMPLED_POINTS
from src.core.exceptions import (
    FieldDomainError,
    InvalidArgumentError,
    UnsupportedOrderError,
)

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

_UNBOUNDED = (-math.inf, math.inf)


@dataclass(frozen=True)
class FieldProfile:
    """
    Stationary field chi(x) on a closed domain [x_lo, x_hi].

    Use the constructors (zero, linear, sine, box_eigenfield, sampled)
    rather than the raw initializer.
    """
    kind: FieldKind
    domain: Tuple[float, float] = _UNBOUNDED
    slope: float = 0.0
    amplitude: float = 0.0
    wavenumber: float = 0.0
    n: int = 0
    a: float = 0.0
    xs: Optional[np.ndarray] = field(default=None, repr=False, compare=False)
    ys: Optional[np.ndarray] = field(default=None, repr=False, compare=False)
    _spline: Optional[CubicSpline] = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        x_lo, x_hi = self.domain
        if not x_lo < x_hi:
            raise InvalidArgumentError(
                "Field domain must satisfy x_lo < x_hi", argument="domain", value=self.domain
            )
        if self.kind == FieldKind.SAMPLED:
            self._init_spline()

    def _init_spline(self) -> None:
        xs = np.asarray(self.xs, dtype=float)
        ys = np.asarray(self.ys, dtype=float)
        if xs.ndim != 1 or xs.shape != ys.shape:
            raise InvalidArgumentError(
                "Sampled field needs 1-D xs and ys of equal length",
                details={"xs_shape": xs.shape, "ys_shape": ys.shape},
            )
        if xs.size < MIN_SAMPLED_POINTS:
            raise InvalidArgumentError(
                f"Sampled field needs at least {MIN_SAMPLED_POINTS} points",
                argument="xs",
                value=int(xs.size),
            )
        if not np.all(np.diff(xs) > 0):
            raise InvalidArgumentError("Sampled xs must be strictly increasing", argument="xs")
        if not np.all(np.isfinite(ys)) or not np.all(np.isfinite(xs)):
            raise InvalidArgumentError("Sampled values must be finite", argument="ys")
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys)
        object.__setattr__(self, "_spline", CubicSpline(xs, ys, bc_type="natural"))

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def zero(cls, domain: Tuple[float, float] = _UNBOUNDED) -> "FieldProfile":
        """chi = 0."""
        return cls(kind=FieldKind.ZERO, domain=domain)

    @classmethod
    def linear(cls, slope: float, domain: Tuple[float, float] = _UNBOUNDED) -> "FieldProfile":
        """chi = slope * x."""
        return cls(kind=FieldKind.LINEAR, domain=domain, slope=float(slope))

    @classmethod
    def sine(
        cls,
        amplitude: float,
        wavenumber: float,
        domain: Tuple[float, float] = _UNBOUNDED,
    ) -> "FieldProfile":
        """chi = amplitude * sin(wavenumber * x)."""
        return cls(
            kind=FieldKind.SINE,
            domain=domain,
            amplitude=float(amplitude),
            wavenumber=float(wavenumber),
        )

    @classmethod
    def sampled(cls, xs, ys) -> "FieldProfile":
        """Natural cubic spline through (xs, ys); domain is [xs[0], xs[-1]]."""
        xs = np.asarray(xs, dtype=float)
        if xs.ndim != 1 or xs.size < MIN_SAMPLED_POINTS:
            raise InvalidArgumentError(
                f"Sampled field needs at least {MIN_SAMPLED_POINTS} points",
                argument="xs",
                value=int(xs.size),
            )
        return cls(
            kind=FieldKind.SAMPLED,
            domain=(float(xs[0]), float(xs[-1])),
            xs=xs,
            ys=np.asarray(ys, dtype=float),
        )

    # ------------------------------------------------------------------
    # Evaluation
    # ------------------------------------------------------------------

    def contains(self, x: ArrayLike) -> bool:
        """True if every x lies in the closed domain."""
        if isinstance(x, (float, int)):
            return self.domain[0] <= x <= self.domain[1]
        arr = np.asarray(x, dtype=float)
        return bool(np.all((arr >= self.domain[0]) & (arr <= self.domain[1])))

    def evaluate(self, x: ArrayLike, order: int = 0) -> ArrayLike:
        """
        Value (order 0), slope (order 1) or curvature (order 2) of chi at x.

        Args:
            x: Point or array of points inside the domain
            order: Derivative order, 0, 1 or 2

        Returns:
            Float for scalar input, ndarray otherwise

        Raises:
            FieldDomainError: If any x lies outside the domain
            UnsupportedOrderError: If order is not 0, 1 or 2
        """
        if order not in (0, 1, 2):
            raise UnsupportedOrderError(order)

        arr = np.asarray(x, dtype=float)
        if not np.all(np.isfinite(arr)) or not self.contains(arr):
            bad = arr[~((arr >= self.domain[0]) & (arr <= self.domain[1]))] if arr.ndim else arr
            raise FieldDomainError(float(np.ravel(bad)[0]), self.domain)

        values = self._evaluate(arr, order)
        if np.ndim(x) == 0:
            return float(values)
        return values

    def _evaluate(self, x: np.ndarray, order: int) -> np.ndarray:
        if self.kind == FieldKind.ZERO:
            return np.zeros_like(x)

        if self.kind == FieldKind.LINEAR:
            if order == 0:
                return self.slope * x
            if order == 1:
                return np.full_like(x, self.slope)
            return np.zeros_like(x)

        if self.kind == FieldKind.SINE:
            return _sine_derivative(self.amplitude, self.wavenumber, x, order)

        if self.kind == FieldKind.BOX_EIGENFIELD:
            k = self.n * math.pi / self.a
            values = _sine_derivative(self.amplitude, k, x, order)
            if order in (0, 2):
                # sin(n pi) is not exactly zero in floating point
                values = np.where((x == 0.0) | (x == self.a), 0.0, values)
            return values

        return self._spline(x, nu=order)

    def abs_slope_derivative(self, x: ArrayLike) -> ArrayLike:
        """
        d|chi'|/dx taken almost everywhere as sign(chi') chi''.

        Exactly 0 where chi' = 0.
        """
        return np.sign(self.evaluate(x, 1)) * self.evaluate(x, 2)

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for serialization."""
        data: Dict[str, Any] = {"kind": self.kind.value, "domain": list(self.domain)}
        if self.kind == FieldKind.LINEAR:
            data["slope"] = self.slope
        elif self.kind == FieldKind.SINE:
            data.update(amplitude=self.amplitude, wavenumber=self.wavenumber)
        elif self.kind == FieldKind.BOX_EIGENFIELD:
            data.update(n=self.n, a=self.a, amplitude=self.amplitude)
        elif self.kind == FieldKind.SAMPLED:
            data.update(xs=self.xs.tolist(), ys=self.ys.tolist())
        return data


def _sine_derivative(amplitude: float, k: float, x: np.ndarray, order: int) -> np.ndarray:
    if order == 0:
        return amplitude * np.sin(k * x)
    if order == 1:
        return amplitude * k * np.cos(k * x)
    return -amplitude * k * k * np.sin(k * x)


def box_eigenfield(n: int, a: float, amplitude: float = 1.0) -> FieldProfile:
    """
    Stationary box eigenfield chi_n(x) = amplitude * sin(n pi x / a) on [0, a].

    Args:
        n: Level index, n >= 1
        a: Box width, a > 0
        amplitude: Field amplitude (free parameter, default 1)

    Raises:
        InvalidArgumentError: If n < 1 or a <= 0
    """
    if int(n) != n or n < 1:
        raise InvalidArgumentError("Box eigenfield index must be a positive integer", argument="n", value=n)
    if not (math.isfinite(a) and a > 0):
        raise InvalidArgumentError("Box width must be positive", argument="a", value=a)
    return FieldProfile(
        kind=FieldKind.BOX_EIGENFIELD,
        domain=(0.0, float(a)),
        n=int(n),
        a=float(a),
        amplitude=float(amplitude),
    )


def evaluate(profile: FieldProfile, x: ArrayLike, order: int = 0) -> ArrayLike:
    """Functional form of FieldProfile.evaluate."""
    return profile.evaluate(x, order)

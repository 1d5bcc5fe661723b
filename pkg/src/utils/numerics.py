"""
Numerical Utilities

Common grid helpers shared by the field, spectral and CLI packages.
"""

import math
import re
from typing import Tuple, Union

import numpy as np


_PI_PATTERN = re.compile(
    r"^\s*(?P<coef>[-+]?(\d+(\.\d*)?|\.\d+)([eE][-+]?\d+)?)?\s*\*?\s*pi\s*(/\s*(?P<den>\d+(\.\d*)?))?\s*$",
    re.IGNORECASE,
)


def parse_length(value: Union[str, float, int]) -> float:
    """
    Parse a length flag, accepting multiples of pi.

    Args:
        value: Number, or a string like "pi", "2pi", "2*pi", "pi/2", "1.5"

    Returns:
        Parsed float value

    Raises:
        ValueError: If the string is not a number or a pi expression
    """
    if isinstance(value, (int, float)):
        return float(value)

    text = value.strip()
    match = _PI_PATTERN.match(text)
    if match:
        coef = float(match.group("coef")) if match.group("coef") else 1.0
        den = float(match.group("den")) if match.group("den") else 1.0
        return coef * math.pi / den
    return float(text)


def uniform_grid(x_lo: float, x_hi: float, n_interior: int) -> Tuple[np.ndarray, float]:
    """
    Uniform grid including both end points.

    Args:
        x_lo: Left end
        x_hi: Right end
        n_interior: Number of interior nodes

    Returns:
        (grid of n_interior + 2 points, spacing)
    """
    h = (x_hi - x_lo) / (n_interior + 1)
    xs = x_lo + h * np.arange(n_interior + 2)
    xs[-1] = x_hi
    return xs, h


def count_nodes(values: np.ndarray) -> int:
    """
    Count sign changes among interior samples.

    End points are excluded; exact zeros inside are skipped so a node
    sitting on a grid point is counted once.
    """
    interior = np.asarray(values, dtype=float)[1:-1]
    signs = np.sign(interior)
    signs = signs[signs != 0]
    if signs.size < 2:
        return 0
    return int(np.count_nonzero(signs[1:] != signs[:-1]))


def normalize_on_grid(values: np.ndarray, h: float) -> np.ndarray:
    """
    L2-normalize samples on a uniform grid and fix the overall sign.

    The first non-zero interior value is made positive.
    """
    values = np.asarray(values, dtype=float)
    norm = math.sqrt(float(np.sum(values ** 2)) * h)
    if norm == 0.0:
        return values.copy()
    out = values / norm
    interior = out[1:-1]
    nonzero = np.flatnonzero(np.abs(interior) > 0)
    if nonzero.size and interior[nonzero[0]] < 0:
        out = -out
    return out


def second_difference(values: np.ndarray, h: float) -> np.ndarray:
    """Central second difference at interior nodes, (f[i-1] - 2 f[i] + f[i+1]) / h^2."""
    values = np.asarray(values, dtype=float)
    return (values[:-2] - 2.0 * values[1:-1] + values[2:]) / (h * h)


def grid_inner_product(u: np.ndarray, w: np.ndarray, h: float) -> float:
    """Rectangle-rule inner product on a uniform grid."""
    return float(np.dot(u, w) * h)

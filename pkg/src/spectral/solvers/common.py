"""
Helpers shared by the spectral back ends.
"""

from typing import Any, Dict

import numpy as np

from src.core.exceptions import InvalidArgumentError
from src.core.schemas import Constants
from src.field.profiles import FieldProfile
from src.utils.numerics import count_nodes, normalize_on_grid

from ..problems import SpectralProblem


def problem_record(problem: SpectralProblem, constants: Constants) -> Dict[str, Any]:
    """Problem description stored in a Spectrum, with the rest energy used for checks."""
    return {
        **problem.to_dict(),
        "rest_energy": problem.m0 * constants.c ** 2,
        "constants": constants.to_dict(),
    }


def check_levels(n_levels: int, limit: int = None) -> None:
    if int(n_levels) != n_levels or n_levels < 1:
        raise InvalidArgumentError("Need at least one level", argument="n_levels", value=n_levels)
    if limit is not None and n_levels > limit:
        raise InvalidArgumentError(
            f"Cannot resolve {n_levels} levels on {limit} interior nodes",
            argument="n_levels",
            value=n_levels,
        )


def grid_eigenfield(xs: np.ndarray, values: np.ndarray, h: float):
    """
    Normalized sampled eigenfield with exact zeros on both walls.

    Returns:
        (FieldProfile, interior node count)
    """
    values = np.asarray(values, dtype=float).copy()
    values[0] = 0.0
    values[-1] = 0.0
    values = normalize_on_grid(values, h)
    return FieldProfile.sampled(xs, values), count_nodes(values)

"""
CSV ingest for sampled profiles.

Two-column files (x, value), header optional, UTF-8, rows strictly
increasing in x. Used for field profiles (x, chi) and sampled potentials
(x, V).
"""

import logging
from pathlib import Path
from typing import Tuple, Union

import numpy as np
import pandas as pd

from src.core.exceptions import ConfigurationError

from .profiles import FieldProfile

logger = logging.getLogger(__name__)


def read_two_column_csv(path: Union[str, Path]) -> Tuple[np.ndarray, np.ndarray]:
    """
    Read a two-column numeric CSV.

    Args:
        path: File path

    Returns:
        (xs, values) as float arrays

    Raises:
        ConfigurationError: If the file is missing, malformed or not increasing in x
    """
    path = Path(path)
    if not path.exists():
        raise ConfigurationError(f"CSV file not found: {path}", config_key="path")

    try:
        frame = pd.read_csv(path, header=None, encoding="utf-8", comment="#", skipinitialspace=True)
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
        raise ConfigurationError(f"Cannot parse CSV file {path}: {e}", config_key="path")

    if frame.shape[1] != 2:
        raise ConfigurationError(
            f"Expected two columns in {path}, found {frame.shape[1]}",
            config_key="path",
        )

    # Optional header: drop a first row that is not numeric
    first = pd.to_numeric(frame.iloc[0], errors="coerce")
    if first.isna().any():
        frame = frame.iloc[1:]

    numeric = frame.apply(pd.to_numeric, errors="coerce")
    if numeric.isna().any().any():
        raise ConfigurationError(f"Non-numeric values in {path}", config_key="path")

    xs = numeric.iloc[:, 0].to_numpy(dtype=float)
    values = numeric.iloc[:, 1].to_numpy(dtype=float)
    if xs.size > 1 and not np.all(np.diff(xs) > 0):
        raise ConfigurationError(
            f"Rows of {path} must be strictly increasing in x", config_key="path"
        )

    logger.info(f"Loaded {xs.size} samples from {path}")
    return xs, values


def load_profile_csv(path: Union[str, Path]) -> FieldProfile:
    """Build a sampled FieldProfile from an (x, chi) CSV file."""
    xs, ys = read_two_column_csv(path)
    return FieldProfile.sampled(xs, ys)

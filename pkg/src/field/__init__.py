"""
Stationary field profiles chi(x) with value, slope and curvature.
"""

from .profiles import FieldProfile, box_eigenfield, evaluate
from .loader import load_profile_csv, read_two_column_csv

__all__ = [
    "FieldProfile",
    "box_eigenfield",
    "evaluate",
    "load_profile_csv",
    "read_two_column_csv",
]

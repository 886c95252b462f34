"""Exact computation of Blattner's formula and its generating function."""

from .blattner import (
    Gradation,
    b_series_direct,
    b_series_rational,
    blattner_B,
    character,
    grade,
    normalize_delta,
    partition_Q,
)
from .rootsys import build_root_system

__version__ = "0.1.0"

__all__ = [
    "Gradation",
    "b_series_direct",
    "b_series_rational",
    "blattner_B",
    "build_root_system",
    "character",
    "grade",
    "normalize_delta",
    "partition_Q",
]

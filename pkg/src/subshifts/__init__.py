"""Finite-window toolkit for factor complexity of subshifts."""

from __future__ import annotations

from .core import (
    Alphabet,
    Certificate,
    ComplexityProfile,
    FactorIndex,
    InvalidArgument,
    ResourceError,
    SequenceWindow,
    SubshiftError,
    build_factor_index,
    complexity_profile,
    read_window,
    write_window,
)
from .sturmian import MechanicalParams, RotationNumber, mechanical_window, sturmian_window

__all__ = [
    "Alphabet", "Certificate", "ComplexityProfile", "FactorIndex", "InvalidArgument",
    "MechanicalParams", "ResourceError", "RotationNumber", "SequenceWindow", "SubshiftError",
    "build_factor_index", "complexity_profile", "mechanical_window", "read_window",
    "sturmian_window", "write_window",
]

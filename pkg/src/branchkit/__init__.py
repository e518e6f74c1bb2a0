"""Exact branching laws for discrete series restricted to symmetric subgroups."""

__version__ = "0.1.0"

from .weights import (
    Basis,
    BasisMismatch,
    IntegralityLattice,
    Rat,
    Weight,
    WeightParseError,
    format_weight,
    inner,
    is_integral,
    is_regular,
    parse_weight,
)

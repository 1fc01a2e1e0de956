"""Exact computations in the Riordan group over the rationals."""

from .errors import RiordanError
from .fps import TruncatedSeries, series
from .group import (
    ASequence,
    FiniteRiordanMatrix,
    RiordanPair,
    a_sequence,
    apply,
    commutator,
    entry,
    inverse,
    multiply,
    project,
)

__all__ = [
    "ASequence",
    "FiniteRiordanMatrix",
    "RiordanError",
    "RiordanPair",
    "TruncatedSeries",
    "a_sequence",
    "apply",
    "commutator",
    "entry",
    "inverse",
    "multiply",
    "project",
    "series",
]

"""Exact entropy, inverses and directional entropy of linear cellular automata over Z_m."""

from .ca import CyclicConfiguration, LocalRule, apply, iterate, shift
from .directional import (
    Angle,
    PiecewiseProfile,
    abs_normalize,
    directional_profile,
    evaluate,
    invertible_fastpath,
    sample,
)
from .entropy import LogLinearValue, invertible_entropy, prime_profiles, topological_entropy
from .fps import LaurentSeries
from .invert import inverse, invertibility_profile

__all__ = [
    "Angle",
    "CyclicConfiguration",
    "LaurentSeries",
    "LocalRule",
    "LogLinearValue",
    "PiecewiseProfile",
    "abs_normalize",
    "apply",
    "directional_profile",
    "evaluate",
    "inverse",
    "invertibility_profile",
    "invertible_entropy",
    "invertible_fastpath",
    "iterate",
    "prime_profiles",
    "sample",
    "shift",
    "topological_entropy",
]

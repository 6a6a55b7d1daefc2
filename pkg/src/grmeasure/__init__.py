"""Gabriel-Roiter measure for finite posets and quiver representations."""

from grmeasure.chains import NatChain, dyadic_value, drop_max, extend, lex_compare
from grmeasure.kernels import BACKEND
from grmeasure.poset import (
    GRResult,
    MeasuredPoset,
    gr_filtration,
    gr_measure,
    gr_measure_oracle,
    immediate_successors,
    validate,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "GRResult",
    "MeasuredPoset",
    "NatChain",
    "drop_max",
    "dyadic_value",
    "extend",
    "gr_filtration",
    "gr_measure",
    "gr_measure_oracle",
    "immediate_successors",
    "lex_compare",
    "validate",
]

"""General-purpose zero-sum game solvers used to cross-check the closed forms."""

from .fictitious import FictitiousPlayTrace, fictitious_play
from .lp import lp_solve, shift_constant
from .support import enumerate_supports

__all__ = [
    "FictitiousPlayTrace",
    "enumerate_supports",
    "fictitious_play",
    "lp_solve",
    "shift_constant",
]

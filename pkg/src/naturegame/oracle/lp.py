"""Minimax linear program for general zero-sum matrix games."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from ..domain import GameMatrix, GameSolution, MixedStrategy
from ..numeric import PROB_TOL
from .simplex import maximize_packing


def shift_constant(H: GameMatrix):
    """Smallest shift ``1 + max(0, -min H)`` that makes every entry at least 1."""
    lo = H.entries.min()
    one = Fraction(1) if H.exact else 1.0
    return one - lo if lo < 0 else one


def _to_strategy(w: np.ndarray, exact: bool) -> MixedStrategy:
    if exact:
        return MixedStrategy(w / w.sum(), exact=True)
    w = np.where(w < PROB_TOL * np.abs(w).max(), 0.0, w.astype(float))
    return MixedStrategy(w, normalize=True)


def lp_solve(H: GameMatrix) -> GameSolution:
    """Solve the game by linear programming.

    The matrix is shifted by ``c`` so every entry is positive; the column
    player's problem becomes ``max sum(u)  s.t.  (H + c) u <= 1, u >= 0``
    and the row player's strategy comes from the dual. The value is
    ``1 / sum(u) - c``. Rational input is solved exactly.
    """
    exact = H.exact
    c = shift_constant(H)
    res = maximize_packing(H.entries + c)
    total = res.objective
    x = _to_strategy(res.dual, exact)
    y = _to_strategy(res.primal, exact)
    value = (Fraction(1) / total - c) if exact else float(1.0 / total - c)
    return GameSolution(x=x, y=y, value=value, support=H.n, method="lp")

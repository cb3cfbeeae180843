"""Closed-form solution of diagonal loss games.

In a diagonal loss game the government can neutralize exactly the
phenomenon it targets: ``H[i][j] = 0`` when ``i == j`` and ``t_i``
otherwise. With losses sorted so that ``t_1 > ... > t_n``, only a leading
block of ``w`` strategies is played. ``w`` is the last ``k`` for which

    t_k > (k - 2) / (1/t_1 + ... + 1/t_{k-1})

holds for every index from 3 up to ``k``. With ``S = 1/t_1 + ... + 1/t_w``
the optimal strategies and value are

    y_j = 1 - (w - 1) / (t_j S),   x_i = 1 / (t_i S),   v = (w - 1) / S

for indices up to ``w`` and zero beyond.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .domain import GameMatrix, GameSolution, LossVector, MixedStrategy, Number
from .errors import ArgumentError

# Relative margin by which t_k must clear its threshold in float mode;
# anything closer counts as a violation (the strategy would get weight 0).
BOUNDARY_RTOL = 1e-12


def _inv(v: Number) -> Number:
    return Fraction(1) / v if isinstance(v, Fraction) else 1.0 / v


def _clears(t_k: Number, threshold: Number) -> bool:
    if isinstance(t_k, Fraction):
        return t_k > threshold
    return t_k - threshold > BOUNDARY_RTOL * abs(threshold)


def support_index(t: LossVector) -> int:
    """Number of leading strategies with positive weight at the optimum.

    Scans ``k = 3..n`` and stops at the first ``k`` whose loss does not clear
    ``(k - 2) / sum_{i<k} 1/t_i``; returns ``k - 1``, or ``n`` if every index
    clears. Games with one or two strategies always use full support.
    """
    n = t.n
    if n <= 2:
        return n
    inv_sum = _inv(t.t[0]) + _inv(t.t[1])
    for k in range(3, n + 1):
        t_k = t.t[k - 1]
        if not _clears(t_k, (k - 2) / inv_sum):
            return k - 1
        inv_sum += _inv(t_k)
    return n


def holds_full_support(t: LossVector) -> bool:
    """True iff the threshold inequality holds for every ``k`` in ``3..n``."""
    return support_index(t) == t.n


def _support_and_sum(t: LossVector) -> tuple[int, Number]:
    w = support_index(t)
    s = sum((_inv(v) for v in t.t[:w]), Fraction(0) if t.exact else 0.0)
    return w, s


def game_value(t: LossVector) -> Number:
    """Value ``(w - 1) / S_w`` of the diagonal game."""
    w, s = _support_and_sum(t)
    return (w - 1) / s


def diagonal_matrix(t: LossVector) -> GameMatrix:
    """Payoff matrix with zero diagonal and row ``i`` filled with ``t_i``."""
    n = t.n
    if t.exact:
        H = np.empty((n, n), dtype=object)
        for i, v in enumerate(t.t):
            H[i, :] = v
            H[i, i] = Fraction(0)
        return GameMatrix(H, exact=True)
    H = np.repeat(np.asarray(t.t, dtype=float)[:, None], n, axis=1)
    np.fill_diagonal(H, 0.0)
    return GameMatrix(H, exact=False)


def solve_diagonal(t: LossVector) -> GameSolution:
    """Optimal strategies and value of the diagonal game for losses sorted non-increasingly.

    Raises ``ArgumentError`` for unsorted losses; use :func:`solve_losses`
    for arbitrary order.
    """
    if not t.non_increasing:
        raise ArgumentError("losses must be sorted in non-increasing order; use solve_losses()")
    exact = t.exact
    n = t.n
    w, s = _support_and_sum(t)
    zero = Fraction(0) if exact else 0.0
    x = [zero] * n
    y = [zero] * n
    for i in range(w):
        ts = t.t[i] * s
        x[i] = 1 / ts
        y[i] = (ts - (w - 1)) / ts
    if exact:
        xs, ys = MixedStrategy(x, exact=True), MixedStrategy(y, exact=True)
    else:
        # Each component is positive on the support; sums are 1 up to rounding.
        xs = MixedStrategy(np.asarray(x, dtype=float))
        ys = MixedStrategy(np.clip(np.asarray(y, dtype=float), 0.0, None))
    return GameSolution(x=xs, y=ys, value=(w - 1) / s, support=w, method="analytic")


def solve_losses(t: LossVector) -> GameSolution:
    """Solve a diagonal game whose losses may be in any order.

    Losses are sorted descending (stable, so ties keep their input order),
    solved with :func:`solve_diagonal`, and both strategies are mapped back
    to the input order. The permutation is recorded in ``order``.
    """
    if t.non_increasing:
        return solve_diagonal(t)
    order = sorted(range(t.n), key=lambda k: -t.t[k])
    sorted_t = LossVector([t.t[k] for k in order], relaxed=True, exact=t.exact)
    sol = solve_diagonal(sorted_t)
    x = np.empty(t.n, dtype=sol.x.p.dtype)
    y = np.empty(t.n, dtype=sol.y.p.dtype)
    for pos, k in enumerate(order):
        x[k] = sol.x.p[pos]
        y[k] = sol.y.p[pos]
    return GameSolution(
        x=MixedStrategy(x, exact=t.exact),
        y=MixedStrategy(y, exact=t.exact),
        value=sol.value,
        support=sol.support,
        method="analytic",
        order=tuple(order),
    )

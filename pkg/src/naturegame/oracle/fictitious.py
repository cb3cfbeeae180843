"""Brown-Robinson fictitious play with running value bounds."""

from __future__ import annotations

from dataclasses import dataclass

import numba
import numpy as np

from ..domain import GameMatrix, GameSolution, MixedStrategy
from ..errors import ArgumentError


@dataclass(frozen=True, eq=False)
class FictitiousPlayTrace:
    """Result of a fictitious-play run.

    ``lower_bound`` and ``upper_bound`` are the best guarantees seen so far
    for the row (maximizing) and column (minimizing) player, so they always
    bracket the game value. ``lower_history``/``upper_history`` hold those
    running bounds after every iteration when recording was requested.
    """

    iterations: int
    lower_bound: float
    upper_bound: float
    x_avg: MixedStrategy
    y_avg: MixedStrategy
    converged: bool
    lower_history: np.ndarray | None = None
    upper_history: np.ndarray | None = None

    @property
    def gap(self) -> float:
        return self.upper_bound - self.lower_bound

    def to_solution(self) -> GameSolution:
        return GameSolution(
            x=self.x_avg,
            y=self.y_avg,
            value=0.5 * (self.lower_bound + self.upper_bound),
            support=self.y_avg.size,
            method="fictitious-play",
        )


@numba.njit(cache=True)
def _play(H, max_iters, eps, record):
    m, n = H.shape
    row_pay = np.zeros(m)  # H @ (column counts)
    col_pay = np.zeros(n)  # (row counts) @ H
    x_count = np.zeros(m, dtype=np.int64)
    y_count = np.zeros(n, dtype=np.int64)
    size = max_iters if record else 0
    lo_hist = np.empty(size)
    hi_hist = np.empty(size)
    best_lo = -np.inf
    best_hi = np.inf
    k = 0
    while k < max_iters:
        k += 1
        # Row player answers the column history, then the column player answers the updated row history.
        i = np.argmax(row_pay)
        x_count[i] += 1
        for j in range(n):
            col_pay[j] += H[i, j]
        jj = np.argmin(col_pay)
        y_count[jj] += 1
        for r in range(m):
            row_pay[r] += H[r, jj]
        lo = col_pay.min() / k
        hi = row_pay.max() / k
        if lo > best_lo:
            best_lo = lo
        if hi < best_hi:
            best_hi = hi
        if record:
            lo_hist[k - 1] = best_lo
            hi_hist[k - 1] = best_hi
        if best_hi - best_lo <= eps:
            break
    return k, best_lo, best_hi, x_count, y_count, lo_hist[:k], hi_hist[:k]


def fictitious_play(
    H: GameMatrix, max_iters: int = 100_000, eps: float = 1e-4, record: bool = False
) -> FictitiousPlayTrace:
    """Run alternating fictitious play until the bound gap is at most ``eps``.

    Best-response ties go to the lowest index. Exact matrices are played in
    float64. Exhausting ``max_iters`` is reported by ``converged=False``.
    """
    if max_iters < 1:
        raise ArgumentError(f"max_iters must be at least 1, got {max_iters}")
    if not eps > 0:
        raise ArgumentError(f"eps must be positive, got {eps}")
    A = np.ascontiguousarray(H.entries.astype(float))
    k, lo, hi, xc, yc, lo_hist, hi_hist = _play(A, int(max_iters), float(eps), bool(record))
    return FictitiousPlayTrace(
        iterations=int(k),
        lower_bound=float(lo),
        upper_bound=float(hi),
        x_avg=MixedStrategy(xc / k, normalize=True),
        y_avg=MixedStrategy(yc / k, normalize=True),
        converged=bool(hi - lo <= eps),
        lower_history=lo_hist if record else None,
        upper_history=hi_hist if record else None,
    )

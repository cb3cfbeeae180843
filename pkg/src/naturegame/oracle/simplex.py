"""Dense-tableau primal simplex with Bland's rule, for float64 or Fraction tableaus."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..errors import SolverError
from ..numeric import is_exact

# Float-mode pivot tolerance; exact mode compares against zero.
PIVOT_TOL = 1e-12


@dataclass(frozen=True)
class SimplexResult:
    primal: np.ndarray
    dual: np.ndarray
    objective: float | Fraction
    iterations: int


def maximize_packing(A: np.ndarray, max_iters: int | None = None) -> SimplexResult:
    """Solve ``max 1^T u  s.t.  A u <= 1, u >= 0`` for a strictly positive matrix ``A``.

    The slack basis is feasible at the origin, so no phase-one is needed.
    Positivity of ``A`` keeps the problem bounded. Returns the primal ``u``,
    the dual ``w`` (``min 1^T w  s.t.  A^T w >= 1``) read from the slack
    reduced costs, and the common optimal objective.

    Bland's rule (lowest-index entering column, lowest-index basic variable
    among tied ratios) guarantees termination; ``max_iters`` is a guard
    against numerical stalling in float mode.
    """
    exact = is_exact(A)
    m, n = A.shape
    tol = Fraction(0) if exact else PIVOT_TOL
    dtype = object if exact else float
    zero, one = (Fraction(0), Fraction(1)) if exact else (0.0, 1.0)

    T = np.empty((m + 1, n + m + 1), dtype=dtype)
    T[...] = zero
    T[:m, :n] = A
    for i in range(m):
        T[i, n + i] = one
    T[:m, -1] = one
    T[m, :n] = -one
    basis = list(range(n, n + m))

    if max_iters is None:
        max_iters = 50 * (m + n) + 1000
    it = 0
    while True:
        obj = T[m, :-1]
        entering = next((j for j in range(n + m) if obj[j] < -tol), None)
        if entering is None:
            break
        if it >= max_iters:
            raise SolverError(f"simplex exceeded {max_iters} pivots")
        col = T[:m, entering]
        ratios = [(T[i, -1] / col[i], i) for i in range(m) if col[i] > tol]
        if not ratios:
            raise SolverError("linear program is unbounded")
        best = min(r for r, _ in ratios)
        leave = min((i for r, i in ratios if _ties(r, best, exact)), key=lambda i: basis[i])
        _pivot(T, leave, entering)
        basis[leave] = entering
        it += 1

    primal = np.empty(n, dtype=dtype)
    primal[...] = zero
    for i, b in enumerate(basis):
        if b < n:
            primal[b] = T[i, -1]
    dual = T[m, n : n + m].copy()
    return SimplexResult(primal=primal, dual=dual, objective=T[m, -1], iterations=it)


def _ties(a, b, exact: bool) -> bool:
    if exact:
        return a == b
    return abs(a - b) <= PIVOT_TOL * max(1.0, abs(b))


def _pivot(T: np.ndarray, r: int, c: int) -> None:
    T[r] = T[r] / T[r, c]
    for i in range(T.shape[0]):
        if i != r and T[i, c] != 0:
            T[i] = T[i] - T[i, c] * T[r]

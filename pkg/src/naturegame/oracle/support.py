"""Brute-force equilibrium search over square support pairs for tiny games."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import numpy as np

from ..domain import GameMatrix, GameSolution, MixedStrategy
from ..errors import CapError, SolverError
from ..numeric import CERT_TOL
from ..verify import certify_saddle

MAX_DIM = 5


def _solve_exact(M: list[list[Fraction]], b: list[Fraction]) -> list[Fraction] | None:
    n = len(M)
    A = [row[:] + [rhs] for row, rhs in zip(M, b)]
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c] != 0), None)
        if p is None:
            return None
        A[c], A[p] = A[p], A[c]
        piv = A[c][c]
        A[c] = [v / piv for v in A[c]]
        for r in range(n):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                A[r] = [a - f * b_ for a, b_ in zip(A[r], A[c])]
    return [A[r][n] for r in range(n)]


def _equalize(block: np.ndarray, exact: bool):
    """Solve ``block @ p = v * 1, sum(p) = 1`` for ``(p, v)``; ``None`` if singular."""
    k = block.shape[0]
    if exact:
        M = [list(block[r]) + [Fraction(-1)] for r in range(k)]
        M.append([Fraction(1)] * k + [Fraction(0)])
        sol = _solve_exact(M, [Fraction(0)] * k + [Fraction(1)])
        if sol is None:
            return None
        return np.array(sol[:k], dtype=object), sol[k]
    M = np.zeros((k + 1, k + 1))
    M[:k, :k] = block
    M[:k, k] = -1.0
    M[k, :k] = 1.0
    rhs = np.zeros(k + 1)
    rhs[k] = 1.0
    try:
        sol = np.linalg.solve(M, rhs)
    except np.linalg.LinAlgError:
        return None
    if not np.all(np.isfinite(sol)):
        return None
    return sol[:k], float(sol[k])


def enumerate_supports(H: GameMatrix, tol=None) -> GameSolution:
    """Find an equilibrium by trying every square support pair, smallest first.

    For each pair of equal-size row and column supports the equalizing
    systems for both players are solved; the first pair whose strategies
    are non-negative and pass the saddle certificate is returned. Some pair
    always succeeds because every matrix game has an extreme optimal pair
    whose supports index a nonsingular square kernel.
    """
    m, n = H.shape
    if m > MAX_DIM or n > MAX_DIM:
        raise CapError(f"support enumeration is capped at {MAX_DIM}x{MAX_DIM}, got {m}x{n}")
    exact = H.exact
    if tol is None:
        tol = Fraction(0) if exact else CERT_TOL
    A = H.entries
    dtype = object if exact else float
    zero = Fraction(0) if exact else 0.0

    for k in range(1, min(m, n) + 1):
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                block = A[np.ix_(rows, cols)]
                ysol = _equalize(block, exact)
                if ysol is None:
                    continue
                xsol = _equalize(block.T.copy(), exact)
                if xsol is None:
                    continue
                (yp, v), (xp, _) = ysol, xsol
                if min(yp) < -tol or min(xp) < -tol:
                    continue
                x = np.empty(m, dtype=dtype)
                y = np.empty(n, dtype=dtype)
                x[...] = zero
                y[...] = zero
                x[list(rows)] = xp if exact else np.clip(xp, 0.0, None)
                y[list(cols)] = yp if exact else np.clip(yp, 0.0, None)
                try:
                    xs = MixedStrategy(x, normalize=not exact, exact=exact)
                    ys = MixedStrategy(y, normalize=not exact, exact=exact)
                except ValueError:
                    continue
                if certify_saddle(H, xs, ys, v, tol).valid:
                    return GameSolution(x=xs, y=ys, value=v, support=n, method="support-enumeration")
    raise SolverError("no support pair passed certification (ill-conditioned matrix?)")

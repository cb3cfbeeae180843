"""Saddle-point certificates and structural checks on proposed solutions."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .analytic import diagonal_matrix
from .domain import (
    GameMatrix,
    GameSolution,
    LossVector,
    MixedStrategy,
    Number,
    SaddleCertificate,
    Violation,
    common_arrays,
)
from .errors import ArgumentError, DimensionError
from .numeric import CERT_TOL


def _default_tol(exact: bool) -> Number:
    return Fraction(0) if exact else CERT_TOL


def certify_saddle(
    H: GameMatrix,
    x: MixedStrategy,
    y: MixedStrategy,
    v: Number,
    tol: Number | None = None,
) -> SaddleCertificate:
    """Evaluate ``H(i, y) <= v <= H(x, j)`` for every row ``i`` and column ``j``.

    The certificate is valid when every row payoff is at most ``v + tol``,
    every column payoff is at least ``v - tol`` and ``|x^T H y - v| <= tol``.
    Arithmetic is exact when the matrix, both strategies and ``v`` are
    rational; otherwise everything is evaluated in float64. The default
    tolerance is 0 in exact mode and 1e-9 otherwise.
    """
    if x.size != H.m or y.size != H.n:
        raise DimensionError(
            f"strategies of sizes ({x.size}, {y.size}) do not fit a {H.m}x{H.n} matrix"
        )
    exact = H.exact and x.exact and y.exact and isinstance(v, (int, Fraction))
    A, xp, yp = common_arrays(H, x, y)
    if exact:
        v = Fraction(v)
        tol = Fraction(0) if tol is None else Fraction(tol)
    else:
        A, xp, yp = A.astype(float), xp.astype(float), yp.astype(float)
        v = float(v)
        tol = CERT_TOL if tol is None else float(tol)
    if tol < 0:
        raise ArgumentError(f"tolerance must be non-negative, got {tol}")

    rows = A @ yp
    cols = xp @ A
    pay = xp @ rows
    zero = Fraction(0) if exact else 0.0
    row_excess = [r - v for r in rows]
    col_excess = [v - c for c in cols]
    violations = [Violation("row", i, e) for i, e in enumerate(row_excess) if e > tol]
    violations += [Violation("col", j, e) for j, e in enumerate(col_excess) if e > tol]
    if abs(pay - v) > tol:
        violations.append(Violation("value", -1, abs(pay - v)))
    return SaddleCertificate(
        value=v,
        row_payoffs=tuple(rows.tolist()),
        col_payoffs=tuple(cols.tolist()),
        payoff=pay,
        max_row_violation=max(zero, max(row_excess)),
        max_col_violation=max(zero, max(col_excess)),
        valid=not violations,
        tolerance=tol,
        violations=tuple(violations),
    )


def certify_solution(H: GameMatrix, sol: GameSolution, tol: Number | None = None) -> SaddleCertificate:
    return certify_saddle(H, sol.x, sol.y, sol.value, tol)


def equalizer_check(
    H: GameMatrix, y: MixedStrategy, support: Iterable[int], tol: Number | None = None
) -> bool:
    """True iff nature's pure payoffs against ``y`` agree on ``support`` (0-based rows) within ``tol``."""
    idx = sorted(set(int(i) for i in support))
    if not idx:
        raise ArgumentError("support must be non-empty")
    if idx[0] < 0 or idx[-1] >= H.m:
        raise IndexError(f"support {idx} out of range for {H.m} rows")
    if y.size != H.n:
        raise DimensionError(f"strategy has {y.size} components, matrix has {H.n} columns")
    A, yp = common_arrays(H, y)
    exact = H.exact and y.exact
    if tol is None:
        tol = _default_tol(exact)
    vals = [A[i] @ yp for i in idx]
    return max(vals) - min(vals) <= tol


@dataclass(frozen=True)
class OffSupportReport:
    """Outcome of checking strategies beyond the support index ``w``.

    ``row_slack`` is ``v - max_{i>w} H(i, y)``; ``col_margin`` is
    ``min_{j>w} H(x, j) - v``. Both are ``None`` when ``w == n``.
    """

    valid: bool
    row_slack: Number | None
    col_margin: Number | None


def off_support_report(t: LossVector, sol: GameSolution, tol: Number | None = None) -> OffSupportReport:
    H = diagonal_matrix(t)
    w = sol.support
    if sol.x.size != t.n or sol.y.size != t.n:
        raise DimensionError(f"solution size does not match {t.n} losses")
    if w == t.n:
        return OffSupportReport(True, None, None)
    A, xp, yp = common_arrays(H, sol.x, sol.y)
    exact = H.exact and sol.exact
    v = sol.value if exact else float(sol.value)
    if tol is None:
        tol = _default_tol(exact)
    rows = [A[i] @ yp for i in range(w, t.n)]
    cols = [xp @ A[:, j] for j in range(w, t.n)]
    row_slack = v - max(rows)
    col_margin = min(cols) - v
    return OffSupportReport(row_slack >= -tol and col_margin >= -tol, row_slack, col_margin)


def off_support_check(t: LossVector, sol: GameSolution, tol: Number | None = None) -> bool:
    """True iff rows beyond the support pay at most ``v`` and columns beyond it cost at least ``v``."""
    return off_support_report(t, sol, tol).valid

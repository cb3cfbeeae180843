from __future__ import annotations

from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest
from scipy.optimize import linprog

from naturegame import LossVector

ROOT = Path(__file__).resolve().parents[1]
DATA = ROOT / "demos" / "data"

PUBLISHED_T = (30, 28, 26, 24, 22)
TRUNCATED_T = ("1/3", "1/3.5", "1/4", "1/4.5", "1/5")


def scipy_game_value(A) -> float:
    """Value of the zero-sum game ``A`` (row player maximizes) via HiGHS.

    Independent of the package: variables ``(y, v)``, minimize ``v`` subject
    to ``A y <= v`` and ``sum(y) = 1``.
    """
    A = np.asarray(A, dtype=float)
    m, n = A.shape
    c = np.zeros(n + 1)
    c[-1] = 1.0
    A_ub = np.hstack([A, -np.ones((m, 1))])
    A_eq = np.zeros((1, n + 1))
    A_eq[0, :n] = 1.0
    bounds = [(0, None)] * n + [(None, None)]
    res = linprog(c, A_ub=A_ub, b_ub=np.zeros(m), A_eq=A_eq, b_eq=[1.0], bounds=bounds, method="highs")
    assert res.status == 0, res.message
    return float(res.x[-1])


def random_losses(rng: np.random.Generator, n: int, lo: float = 0.01, hi: float = 100.0) -> LossVector:
    while True:
        t = np.sort(rng.uniform(lo, hi, n))[::-1]
        if np.all(np.diff(t) < 0):
            return LossVector(t)


def random_exact_losses(rng: np.random.Generator, n: int) -> LossVector:
    """Distinct hundredths in (0.01, 100], strictly decreasing, as Fractions."""
    cents = rng.choice(np.arange(1, 10001), size=n, replace=False)
    return LossVector([Fraction(int(c), 100) for c in sorted(cents, reverse=True)])


@pytest.fixture
def published() -> LossVector:
    return LossVector(PUBLISHED_T)


@pytest.fixture
def truncated() -> LossVector:
    return LossVector(TRUNCATED_T)


@pytest.fixture
def truncated_exact() -> LossVector:
    return LossVector(TRUNCATED_T, exact=True)


# -- acceptance summary --------------------------------------------------------

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, line = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {line}")

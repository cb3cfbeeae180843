from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import scipy_game_value
from naturegame import (
    ArgumentError,
    CapError,
    DimensionError,
    GameMatrix,
    LossVector,
    SolverError,
    certify_saddle,
    diagonal_matrix,
    enumerate_supports,
    fictitious_play,
    game_value,
    lp_solve,
)
from naturegame.oracle import shift_constant
from naturegame.oracle.simplex import maximize_packing

F = Fraction


def _rand_matrix(rng, max_dim=4, lo=-10, hi=10):
    m, n = rng.integers(1, max_dim + 1, size=2)
    return GameMatrix(rng.uniform(lo, hi, size=(m, n)))


# -- simplex -------------------------------------------------------------------


def test_packing_lp_small_known_optimum():
    # max u1 + u2 s.t. 2u1 + u2 <= 1, u1 + 3u2 <= 1 -> u = (2/5, 1/5), w = (2/5, 1/5)
    A = np.array([[F(2), F(1)], [F(1), F(3)]], dtype=object)
    res = maximize_packing(A)
    assert list(res.primal) == [F(2, 5), F(1, 5)]
    assert list(res.dual) == [F(2, 5), F(1, 5)]
    assert res.objective == F(3, 5)


def test_simplex_iteration_guard():
    A = np.array([[2.0, 1.0], [1.0, 3.0]])
    with pytest.raises(SolverError):
        maximize_packing(A, max_iters=0)


def test_degenerate_lp_terminates():
    # Many tied ratios: Bland's rule must not cycle.
    A = np.ones((6, 6), dtype=object) * F(1)
    res = maximize_packing(A)
    assert res.objective == 1


# -- lp_solve ------------------------------------------------------------------


def test_lp_two_by_two():
    sol = lp_solve(GameMatrix([[0, 2], [1, 0]], exact=True))
    assert sol.value == F(2, 3)
    assert list(sol.x.p) == [F(1, 3), F(2, 3)]
    assert list(sol.y.p) == [F(2, 3), F(1, 3)]
    assert sol.method == "lp"


def test_lp_one_by_one():
    sol = lp_solve(GameMatrix([[5.0]]))
    assert sol.value == pytest.approx(5.0, abs=1e-12)
    assert list(sol.x.p) == [1.0] and list(sol.y.p) == [1.0]


def test_lp_published_matrix(published):
    sol = lp_solve(diagonal_matrix(published))
    assert sol.value == pytest.approx(game_value(published), abs=1e-9)
    assert sol.value == pytest.approx(20.5517772, abs=1e-7)


def test_lp_rejects_empty_matrix():
    with pytest.raises(DimensionError):
        lp_solve(GameMatrix(np.zeros((0, 3))))


def test_shift_constant():
    assert shift_constant(GameMatrix([[2.0, 3.0]])) == 1.0
    assert shift_constant(GameMatrix([[-4.0, 3.0]])) == 5.0
    assert shift_constant(GameMatrix([[F(-1, 2), 3]])) == F(3, 2)


def test_lp_matches_scipy_and_certifies():
    rng = np.random.default_rng(21)
    for _ in range(200):
        H = _rand_matrix(rng, max_dim=8)
        sol = lp_solve(H)
        assert sol.value == pytest.approx(scipy_game_value(H.entries), abs=1e-8)
        assert certify_saddle(H, sol.x, sol.y, sol.value, 1e-9).valid


def test_lp_exact_certifies_at_zero_tolerance():
    rng = np.random.default_rng(22)
    for _ in range(50):
        m, n = rng.integers(1, 6, size=2)
        H = GameMatrix([[F(int(v), 7) for v in row] for row in rng.integers(-20, 21, size=(m, n))])
        sol = lp_solve(H)
        assert sol.exact
        assert certify_saddle(H, sol.x, sol.y, sol.value, 0).valid


def test_lp_duality_under_transpose_and_negation():
    rng = np.random.default_rng(23)
    for _ in range(50):
        H = _rand_matrix(rng, max_dim=6)
        a = lp_solve(H)
        b = lp_solve(-H.transpose())
        assert b.value == pytest.approx(-a.value, abs=1e-9)
        # The swapped game's row player is the original column player.
        assert certify_saddle(H, b.y, b.x, a.value, 1e-9).valid


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000), st.floats(-50, 50))
def test_lp_shift_invariance(seed, c):
    H = _rand_matrix(np.random.default_rng(seed), max_dim=5)
    a = lp_solve(H)
    b = lp_solve(H.shifted(c))
    assert b.value == pytest.approx(a.value + c, abs=1e-9)
    assert certify_saddle(H, b.x, b.y, a.value, 1e-9).valid


def test_lp_shift_invariance_exact():
    H = GameMatrix([[F(3), F(-1)], [F(-2), F(4)]])
    a = lp_solve(H)
    b = lp_solve(H.shifted(F(7, 3)))
    assert b.value == a.value + F(7, 3)
    assert certify_saddle(H, b.x, b.y, a.value, 0).valid


# -- fictitious play -------------------------------------------------------------


def test_fictitious_play_two_by_two():
    H = GameMatrix([[0, 2], [1, 0]])
    tr = fictitious_play(H, max_iters=1_000_000, eps=1e-3, record=True)
    assert tr.converged and tr.gap <= 1e-3
    assert tr.lower_bound <= 2 / 3 <= tr.upper_bound


def test_fictitious_play_constant_game_stops_after_one_iteration():
    tr = fictitious_play(GameMatrix([[3.5]]), max_iters=100, eps=1e-6)
    assert tr.iterations == 1
    assert tr.lower_bound == tr.upper_bound == 3.5


def test_fictitious_play_diagonal_game():
    tr = fictitious_play(diagonal_matrix(LossVector([2, 1])), max_iters=1_000_000, eps=1e-4)
    assert tr.lower_bound <= 2 / 3 <= tr.upper_bound
    assert tr.gap <= 1e-4


def test_fictitious_play_budget_exhaustion_is_reported(published):
    tr = fictitious_play(diagonal_matrix(published), max_iters=50, eps=1e-12)
    assert tr.iterations == 50 and not tr.converged
    v = game_value(published)
    assert tr.lower_bound <= v <= tr.upper_bound


def test_fictitious_play_trace_invariants():
    rng = np.random.default_rng(31)
    for _ in range(30):
        H = _rand_matrix(rng)
        v = lp_solve(H).value
        tr = fictitious_play(H, max_iters=20_000, eps=1e-5, record=True)
        assert len(tr.lower_history) == tr.iterations
        assert np.all(tr.lower_history <= v + 1e-9)
        assert np.all(tr.upper_history >= v - 1e-9)
        assert np.all(np.diff(tr.upper_history - tr.lower_history) <= 0)
        sol = tr.to_solution()
        assert sol.method == "fictitious-play"


def test_fictitious_play_lowest_index_tie_break():
    # Every entry equal: both players keep choosing index 0.
    tr = fictitious_play(GameMatrix(np.ones((3, 3))), max_iters=5, eps=1e-9)
    assert list(tr.x_avg.p) == [1.0, 0.0, 0.0]
    assert list(tr.y_avg.p) == [1.0, 0.0, 0.0]


def test_fictitious_play_argument_checks():
    H = GameMatrix([[1.0]])
    with pytest.raises(ArgumentError):
        fictitious_play(H, max_iters=0)
    with pytest.raises(ArgumentError):
        fictitious_play(H, eps=0)


# -- support enumeration ----------------------------------------------------------


def test_enumeration_two_by_two_diagonal():
    sol = enumerate_supports(GameMatrix([[0, 30], [28, 0]], exact=True))
    assert sol.value == F(840, 58)
    assert sol.x.support == (0, 1) and sol.y.support == (0, 1)
    assert sol.method == "support-enumeration"


def test_enumeration_constant_matrix_returns_pure_pair():
    sol = enumerate_supports(GameMatrix([[1.0, 1.0], [1.0, 1.0]]))
    assert sol.value == 1
    assert len(sol.x.support) == 1 and len(sol.y.support) == 1


def test_enumeration_three_strategy_diagonal():
    t = LossVector([F(1, 3), F(1, 4), F(1, 5)])
    sol = enumerate_supports(diagonal_matrix(t))
    assert sol.value == F(2, 12)
    assert sol.y.support == (0, 1, 2)
    assert lp_solve(diagonal_matrix(t)).value == sol.value


def test_enumeration_cap():
    with pytest.raises(CapError):
        enumerate_supports(GameMatrix(np.zeros((6, 2))))
    enumerate_supports(GameMatrix(np.zeros((5, 5))))


def test_enumeration_agrees_with_lp():
    rng = np.random.default_rng(41)
    for _ in range(200):
        H = _rand_matrix(rng, max_dim=5)
        assert abs(enumerate_supports(H).value - lp_solve(H).value) <= 1e-9


def test_enumeration_exact_on_degenerate_integer_games():
    rng = np.random.default_rng(42)
    for _ in range(60):
        m, n = rng.integers(1, 4, size=2)
        H = GameMatrix(rng.integers(-2, 3, size=(m, n)).tolist(), exact=True)
        sol = enumerate_supports(H)
        assert sol.value == lp_solve(H).value
        assert certify_saddle(H, sol.x, sol.y, sol.value, 0).valid

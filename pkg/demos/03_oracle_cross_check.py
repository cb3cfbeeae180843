"""Cross-checking the closed form against three generic solvers.

The simplex LP, support enumeration and fictitious play know nothing about
the diagonal structure, so agreement with them is an independent check.

Run: python3 demos/03_oracle_cross_check.py
"""

import numpy as np

from naturegame import (
    GameMatrix,
    LossVector,
    diagonal_matrix,
    enumerate_supports,
    fictitious_play,
    lp_solve,
    solve_diagonal,
)

t = LossVector([30, 28, 26, 24, 22])
H = diagonal_matrix(t)

print(f"closed form          {solve_diagonal(t).value:.12f}")
print(f"simplex LP           {lp_solve(H).value:.12f}")
print(f"support enumeration  {enumerate_supports(H).value:.12f}")
trace = fictitious_play(H, max_iters=1_000_000, eps=1e-4)
status = "converged" if trace.converged else "budget spent"
print(f"fictitious play      [{trace.lower_bound:.6f}, {trace.upper_bound:.6f}] after {trace.iterations} rounds ({status})")
# Fictitious play closes the gap slowly (roughly like 1/sqrt(k)); the bracket
# still contains the value at every round.

# The LP also handles games without the diagonal structure.
rng = np.random.default_rng(0)
G = GameMatrix(rng.uniform(-10, 10, size=(3, 4)))
a, b = lp_solve(G), enumerate_supports(G)
print(f"random 3x4 game: LP {a.value:.9f}, enumeration {b.value:.9f}")

# Rational mode gives the value as a fraction.
print("exact LP value:", lp_solve(diagonal_matrix(t.to_exact())).value)

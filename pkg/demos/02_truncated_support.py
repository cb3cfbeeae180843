"""When the cheapest risks are not worth covering.

Losses 1/3, 1/3.5, 1/4, 1/4.5, 1/5 fail the support threshold at the fifth
program, so the optimal allocation leaves it unfunded. Nature also never
picks that risk, since covering the other four already caps the loss at t_5.

Run: python3 demos/02_truncated_support.py
"""

from naturegame import LossVector, off_support_report, solve_diagonal, support_index

t = LossVector(["1/3", "1/3.5", "1/4", "1/4.5", "1/5"], exact=True)

omega = support_index(t)
print(f"support index: {omega}")

sol = solve_diagonal(t)
print("allocation:", [str(p) for p in sol.y.p])
print("nature:    ", [str(p) for p in sol.x.p])
print(f"value: {sol.value}")

rep = off_support_report(t, sol, 0)
print(f"off-support rows pay at most the value (slack {rep.row_slack})")
print(f"funding program 5 would cost an extra {rep.col_margin} per unit")

# Shrinking the last loss moves the boundary: with t_3 tiny only two programs remain.
tiny = LossVector([10, 9, 1e-6])
print(f"t = (10, 9, 1e-6): support index {support_index(tiny)}, value {solve_diagonal(tiny).value:.6f}")

"""Five support programs against an adversarial nature.

Each program i neutralizes one demographic risk; if the risk that actually
materializes is not covered, the loss is t_i thousand newborns. With losses
30, 28, 26, 24 and 22 every program ends up funded.

Run: python3 demos/01_full_support.py
"""

from naturegame import LossVector, certify_saddle, diagonal_matrix, solve_diagonal, support_index

programs = [
    "maternal capital",
    "mortgage for young families",
    "large family benefits",
    "preschool education",
    "medical support",
]
t = LossVector([30, 28, 26, 24, 22], programs, unit="thousand newborns")

print(f"support index: {support_index(t)} of {t.n}")
sol = solve_diagonal(t)
for name, share in zip(programs, sol.y.p):
    print(f"  {name:<28} {share:.4f}")
print(f"guaranteed loss: {sol.value:.4f} {t.unit}")

# The same numbers in rational arithmetic.
exact = solve_diagonal(t.to_exact())
print(f"exact value: {exact.value}")
print("exact allocation:", ", ".join(str(p) for p in exact.y.p))

# A saddle-point certificate: no pure reply of nature does better than v.
cert = certify_saddle(diagonal_matrix(t), sol.x, sol.y, sol.value)
print(f"certificate valid: {cert.valid}, worst row slack {min(cert.row_slack):.2e}")

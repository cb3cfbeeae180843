"""From a scenario file to a certified JSON report.

Mirrors what ``naturegame solve`` does: parse, build the matrix, pick the
closed form when the matrix has the diagonal shape, certify, and emit.

Run: python3 demos/04_scenario_pipeline.py
"""

from pathlib import Path

from naturegame import certify_saddle, lp_solve
from naturegame.analytic import solve_losses
from naturegame.scenario import detect_diagonal, emit_report, parse_scenario, to_matrix

DATA = Path(__file__).parent / "data"

for name in ("published_full_support.json", "unsorted.json", "costly_programs.json"):
    doc = parse_scenario((DATA / name).read_bytes())
    H = to_matrix(doc)
    t = detect_diagonal(H)
    sol = solve_losses(t) if t is not None else lp_solve(H)
    cert = certify_saddle(H, sol.x, sol.y, sol.value)
    print(f"== {name}: {sol.method}, value {sol.value:.6f}, certified {cert.valid}")

# The full report for the last scenario, byte-for-byte what the CLI prints.
print(emit_report(sol, cert, doc.names, doc.unit).decode())

"""Command-line entry point: ingest a scenario, solve, certify, report.

Exit codes: 0 success, 2 input error, 3 certification failure.
Reports go to standard output, diagnostics to standard error.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Sequence

from .analytic import diagonal_matrix, solve_diagonal, solve_losses, support_index
from .domain import LossVector, Scenario
from .errors import GameError
from .fixtures import EXAMPLES, PublishedExample, printed_tolerance
from .numeric import CERT_TOL, parse_number
from .oracle import lp_solve
from .scenario import (
    build_report,
    default_names,
    detect_diagonal,
    dumps,
    format_number,
    parse_scenario,
    parse_solution,
    to_matrix,
)
from .verify import certify_saddle

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CERT = 3


def _err(msg: str) -> None:
    print(f"naturegame: {msg}", file=sys.stderr)


def _tolerance(raw: str | None, exact: bool):
    if raw is None:
        return None
    try:
        tol = parse_number(raw, exact)
    except (TypeError, ValueError, ArithmeticError):
        raise GameError(f"invalid tolerance {raw!r}") from None
    if tol < 0:
        raise GameError(f"tolerance must be non-negative, got {raw}")
    return tol


def read_document(path: Path, exact: bool, relaxed: bool):
    fmt = "csv" if path.suffix.lower() == ".csv" else "json"
    return parse_scenario(path.read_bytes(), fmt, exact=exact, relaxed=relaxed)


def solve_file(path: Path, oracle: bool, exact: bool, relaxed: bool, tol: Any) -> tuple[int, dict | None, str | None]:
    """Solve one scenario file; returns ``(exit code, report, error message)``."""
    try:
        doc = read_document(path, exact, relaxed)
        tol = _tolerance(tol, exact)
    except (OSError, GameError) as exc:
        return EXIT_INPUT, None, f"{path}: {exc}"
    H = to_matrix(doc)
    t = doc if isinstance(doc, LossVector) else detect_diagonal(H)
    sol = lp_solve(H) if oracle or t is None else solve_losses(t)
    cert = certify_saddle(H, sol.x, sol.y, sol.value, tol)
    names = doc.names if isinstance(doc, (LossVector, Scenario)) else None
    unit = getattr(doc, "unit", "")
    report = build_report(sol, cert, names, unit)
    if not cert.valid:
        return EXIT_CERT, report, f"{path}: certification failed ({_describe(report)})"
    return EXIT_OK, report, None


def _describe(report: dict) -> str:
    parts = []
    for v in report["certificate"]["violations"]:
        if v["side"] == "value":
            parts.append(f"payoff differs from value by {v['excess']}")
        else:
            parts.append(f"{v['side']} {v['index']} ({v['label']}) exceeds by {v['excess']}")
    return "; ".join(parts)


# -- table rendering ---------------------------------------------------------


def _table(headers: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    cells = [[str(h) for h in headers]] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[k]) for r in cells) for k in range(len(headers))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def render_report(report: dict) -> str:
    cert = report["certificate"]
    unit = f" {report['unit']}" if report["unit"] else ""
    head = [
        f"method: {report['method']}   exact: {str(report['exact']).lower()}   support: {report['support']}",
        f"value: {report['value']}{unit}",
        f"certificate: {'valid' if cert['valid'] else 'INVALID'} (tolerance {cert['tolerance']})",
        "",
    ]
    rows = [
        (k + 1, name, share, slack)
        for k, (name, share, slack) in enumerate(
            zip(report["programs"], report["allocation"], cert["col_slack"])
        )
    ]
    body = _table(["#", "program", "allocation", "column slack"], rows)
    rows = [
        (k + 1, name, share, slack)
        for k, (name, share, slack) in enumerate(
            zip(report["states"], report["nature_mix"], cert["row_slack"])
        )
    ]
    nature = _table(["#", "nature state", "probability", "row slack"], rows)
    return "\n".join(head) + body + "\n\n" + nature + "\n"


def _emit(obj: dict, fmt: str, render) -> None:
    if fmt == "json":
        sys.stdout.buffer.write(dumps(obj))
    else:
        sys.stdout.write(render(obj))
    sys.stdout.flush()


# -- commands ----------------------------------------------------------------


def cmd_solve(args: argparse.Namespace) -> int:
    if (args.file is None) == (args.batch is None):
        _err("give exactly one of FILE or --batch DIR")
        return EXIT_INPUT
    if args.file is not None:
        code, report, msg = solve_file(Path(args.file), args.oracle, args.exact, args.relaxed, args.tol)
        if msg:
            _err(msg)
        if report is not None:
            _emit(report, args.format, render_report)
        return code

    root = Path(args.batch)
    if not root.is_dir():
        _err(f"{root}: not a directory")
        return EXIT_INPUT
    files = sorted(p for p in root.iterdir() if p.suffix.lower() in (".json", ".csv"))
    with ThreadPoolExecutor() as pool:
        results = list(
            pool.map(lambda p: solve_file(p, args.oracle, args.exact, args.relaxed, args.tol), files)
        )
    entries = []
    for path, (code, report, msg) in zip(files, results):
        if msg:
            _err(msg)
        entries.append({"file": path.name, "exit_code": code, "report": report, "error": msg})
    batch = {"files": entries}
    _emit(batch, args.format, _render_batch)
    return max((e["exit_code"] for e in entries), default=EXIT_OK)


def _render_batch(batch: dict) -> str:
    out = []
    for e in batch["files"]:
        out.append(f"== {e['file']} (exit {e['exit_code']})")
        out.append(render_report(e["report"]) if e["report"] else f"error: {e['error']}\n")
    return "\n".join(out)


def cmd_certify(args: argparse.Namespace) -> int:
    try:
        doc = read_document(Path(args.matrix), args.exact, args.relaxed)
        x, y, v = parse_solution(Path(args.solution).read_bytes(), exact=args.exact)
        tol = _tolerance(args.tol, args.exact)
        H = to_matrix(doc)
        cert = certify_saddle(H, x, y, v, tol)
    except (OSError, GameError) as exc:
        _err(str(exc))
        return EXIT_INPUT
    names = doc.names if isinstance(doc, (LossVector, Scenario)) and doc.names else default_names(H.n)
    row_names = names if H.m == H.n else default_names(H.m, "state")
    f = format_number
    out = {
        "valid": cert.valid,
        "value": f(cert.value),
        "tolerance": f(cert.tolerance),
        "payoff": f(cert.payoff),
        "max_row_violation": f(cert.max_row_violation),
        "max_col_violation": f(cert.max_col_violation),
        "row_payoffs": [f(r) for r in cert.row_payoffs],
        "col_payoffs": [f(c) for c in cert.col_payoffs],
        "violations": [
            {
                "side": v_.side,
                "index": v_.index + 1 if v_.index >= 0 else None,
                "label": (row_names if v_.side == "row" else names)[v_.index] if v_.index >= 0 else None,
                "excess": f(v_.excess),
            }
            for v_ in cert.violations
        ],
    }
    _emit(out, args.format, _render_certificate)
    if not cert.valid:
        _err("certification failed: " + _describe({"certificate": out}))
        return EXIT_CERT
    return EXIT_OK


def _render_certificate(out: dict) -> str:
    lines = [
        f"certificate: {'valid' if out['valid'] else 'INVALID'}",
        f"claimed value: {out['value']}   x'Hy: {out['payoff']}   tolerance: {out['tolerance']}",
        "",
    ]
    rows = [("row", k + 1, p) for k, p in enumerate(out["row_payoffs"])]
    rows += [("col", k + 1, p) for k, p in enumerate(out["col_payoffs"])]
    lines.append(_table(["side", "#", "payoff"], rows))
    for v in out["violations"]:
        if v["side"] == "value":
            lines.append(f"violation: x'Hy differs from the claimed value by {v['excess']}")
        else:
            lines.append(f"violation: {v['side']} {v['index']} ({v['label']}) by {v['excess']}")
    return "\n".join(lines) + "\n"


def run_example(ex: PublishedExample, exact: bool) -> dict:
    """Solve a published example analytically and by LP; compare with the printed figures."""
    t = ex.losses(exact)
    sol = solve_diagonal(t)
    H = diagonal_matrix(t)
    lp = lp_solve(H)
    cert = certify_saddle(H, sol.x, sol.y, sol.value)
    lp_cert = certify_saddle(H, lp.x, lp.y, lp.value)
    if exact:
        oracle_ok = lp.value == sol.value
    else:
        oracle_ok = abs(float(lp.value) - float(sol.value)) <= CERT_TOL
    alloc_err = max(abs(float(a) - float(b)) for a, b in zip(sol.y.p, ex.printed_allocation))
    value_err = abs(float(sol.value) - float(ex.printed_value))
    f = format_number
    return {
        "example": ex.key,
        "title": ex.title,
        "losses": [f(v) for v in t.t],
        "support": {"computed": support_index(t), "published": ex.printed_support,
                    "agrees": support_index(t) == ex.printed_support},
        "allocation": {
            "computed": [f(p) for p in sol.y.p],
            "published": [float(p) for p in ex.printed_allocation],
            "max_abs_error": f(alloc_err),
            "agrees": alloc_err <= printed_tolerance(ex.printed_allocation[0]),
        },
        "value": {
            "computed": f(sol.value),
            "published": float(ex.printed_value),
            "lp": f(lp.value),
            "agrees": value_err <= printed_tolerance(ex.printed_value),
        },
        "unit": ex.unit,
        "certificate_valid": cert.valid,
        "lp_certificate_valid": lp_cert.valid,
        "oracle_agrees": oracle_ok,
    }


def _render_demo(out: dict) -> str:
    def mark(ok: bool) -> str:
        return "agrees" if ok else "DIFFERS (documented discrepancy)"

    def vec(v: list) -> str:
        return "(" + ", ".join(str(x) for x in v) + ")"

    blocks = []
    for r in out["examples"]:
        rows = [
            ("support", r["support"]["computed"], r["support"]["published"], mark(r["support"]["agrees"])),
            ("allocation", vec(r["allocation"]["computed"]), vec(r["allocation"]["published"]),
             mark(r["allocation"]["agrees"])),
            ("value", r["value"]["computed"], r["value"]["published"], mark(r["value"]["agrees"])),
        ]
        unit = f" [{r['unit']}]" if r["unit"] else ""
        blocks.append(
            f"{r['title']}{unit}\nlosses: {vec(r['losses'])}\n"
            + _table(["quantity", "computed", "published", "status"], rows)
            + f"\nLP value: {r['value']['lp']}  oracle agreement: {'yes' if r['oracle_agrees'] else 'NO'}"
            + f"  certificate: {'valid' if r['certificate_valid'] else 'INVALID'}\n"
        )
    status = "ok" if out["ok"] else "FAILED"
    return "\n".join(blocks) + f"\ninternal consistency: {status}\n"


def cmd_demo(args: argparse.Namespace) -> int:
    results = [run_example(ex, args.exact) for ex in EXAMPLES]
    ok = all(r["oracle_agrees"] and r["certificate_valid"] and r["lp_certificate_valid"] for r in results)
    _emit({"exact": args.exact, "examples": results, "ok": ok}, args.format, _render_demo)
    return EXIT_OK if ok else EXIT_CERT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="naturegame",
        description="Optimal allocation against an adversarial nature in diagonal loss games.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, default_format: str) -> None:
        p.add_argument("--exact", action="store_true", help="use exact rational arithmetic")
        p.add_argument("--format", choices=("json", "table"), default=default_format)

    p = sub.add_parser("solve", help="solve a scenario file and print a certified report")
    p.add_argument("file", nargs="?", help="scenario JSON or CSV file")
    p.add_argument("--batch", metavar="DIR", help="solve every .json/.csv file in DIR")
    p.add_argument("--oracle", action="store_true", help="force the LP solver even for diagonal games")
    p.add_argument("--tol", help="certificate tolerance (default 1e-9, or 0 with --exact)")
    p.add_argument("--relaxed", action="store_true", help="accept losses that are not strictly decreasing")
    common(p, "json")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("certify", help="check a proposed solution against a game")
    p.add_argument("matrix", help="scenario file defining the game")
    p.add_argument("solution", help='JSON with "x", "y" and "value" (or a solve report)')
    p.add_argument("--tol", help="certificate tolerance (default 1e-9, or 0 with --exact)")
    p.add_argument("--relaxed", action="store_true", help="accept losses that are not strictly decreasing")
    common(p, "json")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("demo", help="rerun the published worked examples")
    common(p, "table")
    p.set_defaults(func=cmd_demo)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

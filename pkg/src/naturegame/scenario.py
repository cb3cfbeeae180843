"""Scenario documents: payoff construction, diagonal detection, parsing and reports.

Scenario JSON
-------------
One object with exactly one of three shapes, chosen by key presence::

    {"programs": [...], "t": [30, 28, "1/3.5"], "relaxed": false, "unit": "..."}
    {"programs": [...], "q": [...], "r": [[...], ...], "unit": "..."}
    {"matrix": [[...], ...], "unit": "..."}

``programs``, ``relaxed`` and ``unit`` are optional. Numbers may be JSON
numbers or strings holding a decimal or a fraction of decimals.

Scenario CSV
------------
Header ``name,t`` followed by one row per program (bare losses only).
"""

from __future__ import annotations

import csv
import io
import json
from decimal import Decimal
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from .analytic import diagonal_matrix
from .domain import (
    GameMatrix,
    GameSolution,
    LossVector,
    MixedStrategy,
    Number,
    SaddleCertificate,
    Scenario,
)
from .errors import DimensionError, ParseError, ValidationError
from .numeric import parse_number

DETECT_RTOL = 1e-12

Document = Scenario | LossVector | GameMatrix


def build_matrix(s: Scenario) -> GameMatrix:
    """``H[i][j] = q_j`` on the diagonal and ``r_ij + q_j`` elsewhere."""
    n = s.n
    H = np.empty((n, n), dtype=object if s.exact else float)
    for i in range(n):
        for j in range(n):
            H[i, j] = s.q[j] if i == j else s.r[i][j] + s.q[j]
    return GameMatrix(H, exact=s.exact)


def detect_diagonal(H: GameMatrix, rtol: float = DETECT_RTOL) -> LossVector | None:
    """Recover losses ``t`` when ``H`` is a diagonal loss game, else ``None``.

    ``H`` qualifies when its diagonal is zero and each row ``i`` is a
    positive constant ``t_i`` off the diagonal (exactly for rational
    matrices, within ``rtol`` relative otherwise). A 1x1 matrix carries no
    off-diagonal entry and is never recognized. The returned vector is
    ``relaxed`` unless it is strictly decreasing; check
    ``non_increasing`` to see whether the sorting wrapper is needed.
    """
    if H.m != H.n or H.n < 2:
        return None
    A = H.entries
    exact = H.exact
    t = []
    for i in range(H.n):
        ti = A[i, 1 if i == 0 else 0]
        if not ti > 0:
            return None
        tol = 0 if exact else rtol * abs(ti)
        if abs(A[i, i]) > tol:
            return None
        for j in range(H.n):
            if j != i and abs(A[i, j] - ti) > tol:
                return None
        t.append(ti)
    strict = all(a > b for a, b in zip(t, t[1:]))
    return LossVector(t, relaxed=not strict, exact=exact)


# -- parsing -----------------------------------------------------------------

_KEYS = {"programs", "t", "q", "r", "matrix", "relaxed", "unit"}


def _decode(text: bytes | str) -> str:
    if isinstance(text, bytes):
        try:
            return text.decode("utf-8-sig")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not UTF-8: {exc}") from None
    return text


def _reject_constant(name: str):
    raise ValueError(f"non-finite constant {name} is not allowed")


def load_json(text: bytes | str) -> Any:
    """Parse JSON keeping decimals exact (as ``Decimal``); errors carry line and column."""
    try:
        return json.loads(_decode(text), parse_float=Decimal, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def _number_list(value: Any, name: str) -> list:
    if not isinstance(value, list):
        raise ValidationError(name, "expected an array")
    for k, v in enumerate(value):
        if isinstance(v, bool) or not isinstance(v, (int, Decimal, str)):
            raise ValidationError(f"{name}[{k}]", f"expected a number or fraction string, got {v!r}")
    return value


def _number_matrix(value: Any, name: str) -> list:
    if not isinstance(value, list):
        raise ValidationError(name, "expected an array of arrays")
    return [_number_list(row, f"{name}[{i}]") for i, row in enumerate(value)]


def _names(doc: dict) -> list[str] | None:
    names = doc.get("programs")
    if names is None:
        return None
    if not isinstance(names, list) or not all(isinstance(s, str) for s in names):
        raise ValidationError("programs", "expected an array of strings")
    return names


def scenario_from_dict(doc: Any, exact: bool = False, relaxed: bool = False) -> Document:
    if not isinstance(doc, dict):
        raise ValidationError("$", "scenario document must be a JSON object")
    unknown = sorted(set(doc) - _KEYS)
    if unknown:
        raise ValidationError(unknown[0], "unknown key")
    unit = doc.get("unit", "")
    if not isinstance(unit, str):
        raise ValidationError("unit", "expected a string")
    flag = doc.get("relaxed", False)
    if not isinstance(flag, bool):
        raise ValidationError("relaxed", "expected true or false")
    relaxed = relaxed or flag
    shapes = [k for k in ("t", "q", "matrix") if k in doc]
    if "r" in doc and "q" not in doc:
        raise ValidationError("q", "required together with r")
    if len(shapes) != 1:
        raise ValidationError("$", "exactly one of 't', 'q'+'r' or 'matrix' must be given")
    if shapes == ["t"]:
        return LossVector(_number_list(doc["t"], "t"), _names(doc), relaxed, exact, unit)
    if shapes == ["q"]:
        if "r" not in doc:
            raise ValidationError("r", "required together with q")
        q = _number_list(doc["q"], "q")
        r = _number_matrix(doc["r"], "r")
        return Scenario(_names(doc), q, r, unit=unit, exact=exact)
    if "programs" in doc:
        raise ValidationError("programs", "not supported with 'matrix'")
    rows = _number_matrix(doc["matrix"], "matrix")
    widths = {len(row) for row in rows}
    if len(widths) > 1:
        raise ValidationError("matrix", f"rows have different lengths {sorted(widths)}")
    try:
        return GameMatrix(rows, exact=exact)
    except DimensionError as exc:
        raise ValidationError("matrix", str(exc)) from None


def _parse_csv(text: str, exact: bool, relaxed: bool) -> LossVector:
    rows = list(csv.reader(io.StringIO(text)))
    lines = [(k + 1, row) for k, row in enumerate(rows) if any(cell.strip() for cell in row)]
    if not lines:
        raise ParseError("empty CSV input")
    lineno, header = lines[0]
    header = [h.strip().lower() for h in header]
    if header != ["name", "t"]:
        raise ParseError(f"expected header 'name,t', got {','.join(header)!r}", lineno, 1)
    names, t = [], []
    for lineno, row in lines[1:]:
        if len(row) != 2:
            raise ParseError(f"expected 2 fields, got {len(row)}", lineno, 1)
        names.append(row[0].strip())
        t.append(row[1].strip())
    if not t:
        raise ParseError("CSV has no data rows", lineno)
    return LossVector(t, names, relaxed, exact)


def parse_scenario(
    text: bytes | str, format: str = "json", exact: bool = False, relaxed: bool = False
) -> Document:
    """Parse a scenario document into a ``LossVector``, ``Scenario`` or ``GameMatrix``.

    Raises ``ParseError`` (with line and column) for malformed text and
    ``ValidationError`` (naming the field) for invariant violations.
    """
    if format == "json":
        return scenario_from_dict(load_json(text), exact, relaxed)
    if format == "csv":
        return _parse_csv(_decode(text), exact, relaxed)
    raise ValueError(f"unknown scenario format {format!r}")


def to_matrix(doc: Document) -> GameMatrix:
    if isinstance(doc, LossVector):
        return diagonal_matrix(doc)
    if isinstance(doc, Scenario):
        return build_matrix(doc)
    return doc


SOLUTION_SUM_TOL = 1e-9


def _read_strategy(values: list, name: str, exact: bool) -> MixedStrategy:
    if exact:
        return MixedStrategy(values, exact=True)
    p = [_checked_float(v, f"{name}[{k}]") for k, v in enumerate(values)]
    total = sum(p)
    if p and abs(total - 1.0) <= SOLUTION_SUM_TOL and min(p) >= 0:
        return MixedStrategy(p, normalize=True)
    try:
        return MixedStrategy(p)
    except ValidationError as exc:
        raise ValidationError(name, str(exc).partition(": ")[2]) from None


def _checked_float(v: Any, name: str) -> float:
    try:
        return parse_number(v, False)
    except (TypeError, ValueError, ArithmeticError) as exc:
        raise ValidationError(name, str(exc)) from None


def parse_solution(text: bytes | str, exact: bool = False) -> tuple[MixedStrategy, MixedStrategy, Number]:
    """Read a proposed solution ``{"x": [...], "y": [...], "value": v}``.

    The report keys ``nature_mix`` and ``allocation`` are accepted in place
    of ``x`` and ``y``, so a report written by ``solve`` can be certified.
    Float strategies whose sum is within ``SOLUTION_SUM_TOL`` of one are
    renormalized, since 12-digit report values do not sum to one exactly.
    """
    doc = load_json(text)
    if not isinstance(doc, dict):
        raise ValidationError("$", "solution document must be a JSON object")

    def pick(*keys: str):
        for k in keys:
            if k in doc:
                return k, doc[k]
        raise ValidationError(keys[0], "missing")

    kx, xs = pick("x", "nature_mix")
    ky, ys = pick("y", "allocation")
    x = _read_strategy(_number_list(xs, kx), kx, exact)
    y = _read_strategy(_number_list(ys, ky), ky, exact)
    _, raw_v = pick("value")
    _number_list([raw_v], "value")
    return x, y, parse_number(raw_v, exact)


# -- serialization -----------------------------------------------------------


def format_number(v: Any, digits: int = 12) -> int | float | str:
    """JSON-ready number: Fractions as ``"p/q"`` strings, floats to ``digits`` significant digits."""
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return int(v)
    f = float(f"{float(v):.{digits}g}")
    return 0.0 if f == 0 else f


def _exact_literal(v: Number) -> int | float | str:
    if isinstance(v, Fraction):
        return int(v) if v.denominator == 1 else str(v)
    return float(v)


def dump_scenario(doc: Document) -> bytes:
    """Serialize a document so that :func:`parse_scenario` returns an equal value.

    Fractions are written as ``"p/q"`` strings and floats with full
    precision; parse the output with ``exact=`` matching the document.
    """
    if isinstance(doc, LossVector):
        out: dict[str, Any] = {}
        if doc.names is not None:
            out["programs"] = list(doc.names)
        out["t"] = [_exact_literal(v) for v in doc.t]
        if doc.relaxed:
            out["relaxed"] = True
        unit = doc.unit
    elif isinstance(doc, Scenario):
        out = {
            "programs": list(doc.names),
            "q": [_exact_literal(v) for v in doc.q],
            "r": [[_exact_literal(v) for v in row] for row in doc.r],
        }
        unit = doc.unit
    else:
        out = {"matrix": [[_exact_literal(v) for v in row] for row in doc.entries.tolist()]}
        unit = ""
    if unit:
        out["unit"] = unit
    return (json.dumps(out, indent=2) + "\n").encode()


def default_names(n: int, prefix: str = "program") -> list[str]:
    return [f"{prefix}_{k + 1}" for k in range(n)]


def build_report(
    sol: GameSolution,
    cert: SaddleCertificate,
    names: Sequence[str] | None = None,
    unit: str = "",
    row_names: Sequence[str] | None = None,
) -> dict[str, Any]:
    """Report dictionary with a fixed key order; see :func:`emit_report`."""
    n, m = sol.y.size, sol.x.size
    if len(cert.col_payoffs) != n or len(cert.row_payoffs) != m:
        raise DimensionError("certificate does not match the solution dimensions")
    names = list(names) if names is not None else default_names(n)
    if len(names) != n:
        raise DimensionError(f"{len(names)} names for {n} programs")
    if row_names is None:
        row_names = names if m == n else default_names(m, "state")
    row_names = list(row_names)
    f = format_number
    violations = [
        {
            "side": v.side,
            "index": v.index + 1 if v.index >= 0 else None,
            "label": (row_names if v.side == "row" else names)[v.index] if v.index >= 0 else None,
            "excess": f(v.excess),
        }
        for v in cert.violations
    ]
    return {
        "method": sol.method,
        "exact": sol.exact,
        "unit": unit,
        "value": f(sol.value),
        "support": sol.support,
        "programs": names,
        "allocation": [f(p) for p in sol.y.p],
        "states": row_names,
        "nature_mix": [f(p) for p in sol.x.p],
        "certificate": {
            "valid": cert.valid,
            "tolerance": f(cert.tolerance),
            "payoff": f(cert.payoff),
            "max_row_violation": f(cert.max_row_violation),
            "max_col_violation": f(cert.max_col_violation),
            "row_payoffs": [f(v) for v in cert.row_payoffs],
            "col_payoffs": [f(v) for v in cert.col_payoffs],
            "row_slack": [f(v) for v in cert.row_slack],
            "col_slack": [f(v) for v in cert.col_slack],
            "violations": violations,
        },
    }


def emit_report(
    sol: GameSolution,
    cert: SaddleCertificate,
    names: Sequence[str] | None = None,
    unit: str = "",
) -> bytes:
    """Deterministic JSON report: allocation ``y``, nature's mix ``x``, value, support and certificate slacks.

    Floats carry 12 significant digits; exact values are ``"p/q"`` strings.
    Every strategy component is present, including zeros beyond the support.
    """
    return dumps(build_report(sol, cert, names, unit))


def dumps(obj: Any) -> bytes:
    return (json.dumps(obj, indent=2) + "\n").encode()

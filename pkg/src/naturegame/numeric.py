"""Dual-mode numerics: float64 for the main path, ``Fraction`` for exact checks.

An array is "exact" when its dtype is ``object`` and holds ``Fraction`` values.
Every solver inspects its inputs and keeps working in the same mode.
"""

from __future__ import annotations

from decimal import Decimal
from fractions import Fraction
from numbers import Rational, Real
from typing import Any, Iterable

import numpy as np

# Probability mass tolerance for float mode.
PROB_TOL = 1e-12
# Default certificate tolerance for float mode.
CERT_TOL = 1e-9


def parse_number(value: Any, exact: bool = False) -> float | Fraction:
    """Convert an int, float, Decimal, Fraction or numeric string to a number.

    Strings may be decimals (``"0.25"``) or fractions whose parts are
    decimals (``"1/3.5"``). In exact mode decimal text is converted without
    rounding; floats are converted to their exact binary value.
    """
    if isinstance(value, bool):
        raise TypeError(f"boolean is not a number: {value!r}")
    if isinstance(value, str):
        text = value.strip()
        if "/" in text:
            num, _, den = text.partition("/")
            q = Fraction(Decimal(num.strip())) / Fraction(Decimal(den.strip()))
        else:
            q = Fraction(Decimal(text))
        return q if exact else float(q)
    if isinstance(value, Decimal):
        if not value.is_finite():
            raise ValueError(f"non-finite number: {value}")
        q = Fraction(value)
        return q if exact else float(q)
    if isinstance(value, (Rational, Real, np.number)):
        if exact:
            if isinstance(value, Rational):
                return Fraction(value)
            f = float(value)
            if not np.isfinite(f):
                raise ValueError(f"non-finite number: {value}")
            return Fraction(f)
        return float(value)
    raise TypeError(f"not a number: {value!r}")


def is_exact(arr: np.ndarray) -> bool:
    return arr.dtype == object


def infer_exact(values: Iterable[Any]) -> bool:
    """True when every value is a rational (``int`` or ``Fraction``) and at least one is a Fraction."""
    vals = list(values)
    return bool(vals) and all(isinstance(v, Rational) for v in vals) and any(
        isinstance(v, Fraction) for v in vals
    )


def to_array(values: Any, exact: bool) -> np.ndarray:
    """Build a float64 or Fraction-object array from nested sequences."""
    if exact:
        raw = np.asarray(values, dtype=object)
        out = np.empty(raw.shape, dtype=object)
        for idx, v in np.ndenumerate(raw):
            out[idx] = parse_number(v, exact=True)
        return out
    if isinstance(values, np.ndarray) and values.dtype.kind in "fiu":
        return values.astype(float, copy=True)
    raw = np.asarray(values, dtype=object)
    out = np.empty(raw.shape, dtype=float)
    for idx, v in np.ndenumerate(raw):
        out[idx] = parse_number(v, exact=False)
    return out


def frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def as_float(arr: np.ndarray) -> np.ndarray:
    return arr.astype(float) if is_exact(arr) else arr


def zero(exact: bool) -> float | Fraction:
    return Fraction(0) if exact else 0.0


def one(exact: bool) -> float | Fraction:
    return Fraction(1) if exact else 1.0

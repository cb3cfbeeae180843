"""Value types for games against nature and the bilinear payoff operations.

Conventions
-----------
The row player is nature (it maximizes the loss it inflicts), the column
player is the government (it minimizes that loss). Indices in the Python API
are 0-based; reports and CLI output label strategies 1-based.

Every type accepts either floats or ``fractions.Fraction`` values. Passing
``exact=True`` forces rational storage; with ``exact=None`` the mode is
inferred (all-rational input containing at least one ``Fraction`` is exact).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Literal, Sequence

import numpy as np

from .errors import DimensionError, ValidationError
from .numeric import PROB_TOL, frozen, infer_exact, is_exact, parse_number, to_array

Number = float | Fraction
Method = Literal["analytic", "lp", "fictitious-play", "support-enumeration"]


def _flatten(values: Any) -> list:
    out = []
    for v in values:
        if isinstance(v, (list, tuple, np.ndarray)):
            out.extend(_flatten(v))
        else:
            out.append(v)
    return out


def _resolve_exact(values: Any, exact: bool | None) -> bool:
    if exact is not None:
        return exact
    if isinstance(values, np.ndarray):
        return is_exact(values) and infer_exact(values.ravel())
    return infer_exact(_flatten(values))


@dataclass(frozen=True, init=False)
class LossVector:
    """Per-phenomenon losses ``t_1 > t_2 > ... > t_n > 0`` of a diagonal game.

    With ``relaxed=True`` the ordering requirement is dropped (ties and
    unsorted input are accepted); positivity is always enforced.
    """

    t: tuple[Number, ...]
    names: tuple[str, ...] | None = None
    relaxed: bool = False
    unit: str = ""

    def __init__(
        self,
        t: Sequence[Any],
        names: Sequence[str] | None = None,
        relaxed: bool = False,
        exact: bool | None = None,
        unit: str = "",
    ):
        exact = _resolve_exact(t, exact)
        values = []
        for i, raw in enumerate(t):
            try:
                v = parse_number(raw, exact)
            except (TypeError, ValueError, ArithmeticError) as exc:
                raise ValidationError(f"t[{i}]", str(exc)) from None
            if not exact and not np.isfinite(v):
                raise ValidationError(f"t[{i}]", "must be finite")
            if not v > 0:
                raise ValidationError(f"t[{i}]", f"loss must be positive, got {raw}")
            values.append(v)
        if not values:
            raise ValidationError("t", "at least one loss is required")
        if not relaxed:
            for i in range(1, len(values)):
                if not values[i] < values[i - 1]:
                    raise ValidationError(
                        f"t[{i}]",
                        f"losses must be strictly decreasing ({t[i - 1]} then {t[i]}); "
                        "use relaxed mode to admit ties or unsorted input",
                    )
        if names is not None:
            names = tuple(str(s) for s in names)
            if len(names) != len(values):
                raise ValidationError("programs", f"expected {len(values)} names, got {len(names)}")
        object.__setattr__(self, "t", tuple(values))
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "relaxed", bool(relaxed))
        object.__setattr__(self, "unit", unit)

    @property
    def n(self) -> int:
        return len(self.t)

    @property
    def exact(self) -> bool:
        return isinstance(self.t[0], Fraction)

    @property
    def strictly_decreasing(self) -> bool:
        return all(a > b for a, b in zip(self.t, self.t[1:]))

    @property
    def non_increasing(self) -> bool:
        return all(a >= b for a, b in zip(self.t, self.t[1:]))

    def array(self) -> np.ndarray:
        return np.array(self.t, dtype=object if self.exact else float)

    def scaled(self, c: Any) -> LossVector:
        c = parse_number(c, self.exact)
        return LossVector([c * v for v in self.t], self.names, self.relaxed, self.exact, self.unit)

    def to_exact(self) -> LossVector:
        return LossVector(self.t, self.names, self.relaxed, exact=True, unit=self.unit)

    def __len__(self) -> int:
        return len(self.t)


@dataclass(frozen=True, init=False, eq=False)
class GameMatrix:
    """Dense ``m x n`` payoff matrix; entry ``[i, j]`` is nature's gain (the loss to the government)."""

    entries: np.ndarray

    def __init__(self, entries: Any, exact: bool | None = None):
        exact = _resolve_exact(entries, exact)
        try:
            arr = to_array(entries, exact)
        except (TypeError, ValueError, ArithmeticError) as exc:
            raise DimensionError(f"payoff matrix is not a rectangular numeric array: {exc}") from None
        if arr.ndim != 2:
            raise DimensionError(f"payoff matrix must be two-dimensional, got shape {arr.shape}")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise DimensionError(f"payoff matrix is empty (shape {arr.shape})")
        if not exact and not np.all(np.isfinite(arr)):
            raise ValidationError("H", "all payoff entries must be finite")
        object.__setattr__(self, "entries", frozen(arr))

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    @property
    def m(self) -> int:
        return self.entries.shape[0]

    @property
    def n(self) -> int:
        return self.entries.shape[1]

    @property
    def exact(self) -> bool:
        return is_exact(self.entries)

    def to_exact(self) -> GameMatrix:
        return self if self.exact else GameMatrix(self.entries, exact=True)

    def to_float(self) -> GameMatrix:
        return GameMatrix(self.entries.astype(float), exact=False) if self.exact else self

    def transpose(self) -> GameMatrix:
        return GameMatrix(self.entries.T.copy(), exact=self.exact)

    def __neg__(self) -> GameMatrix:
        return GameMatrix(-self.entries, exact=self.exact)

    def shifted(self, c: Any) -> GameMatrix:
        return GameMatrix(self.entries + parse_number(c, self.exact), exact=self.exact)

    def tolist(self) -> list[list[Number]]:
        return self.entries.tolist()

    def __repr__(self) -> str:
        mode = "exact" if self.exact else "float"
        return f"GameMatrix({self.m}x{self.n}, {mode}, {self.entries.tolist()!r})"


@dataclass(frozen=True, init=False, eq=False)
class MixedStrategy:
    """Probability vector over pure strategies.

    Negative components are always rejected. The components must already sum
    to one (within ``PROB_TOL`` in float mode, exactly in rational mode)
    unless ``normalize=True`` is passed.
    """

    p: np.ndarray

    def __init__(self, p: Any, normalize: bool = False, exact: bool | None = None):
        exact = _resolve_exact(p, exact)
        try:
            arr = to_array(p, exact)
        except (TypeError, ValueError, ArithmeticError) as exc:
            raise ValidationError("p", str(exc)) from None
        if arr.ndim != 1 or arr.size == 0:
            raise DimensionError(f"strategy must be a non-empty vector, got shape {arr.shape}")
        if not exact and not np.all(np.isfinite(arr)):
            raise ValidationError("p", "components must be finite")
        neg = [i for i, v in enumerate(arr) if v < 0]
        if neg:
            raise ValidationError(f"p[{neg[0]}]", f"probability is negative ({arr[neg[0]]})")
        total = arr.sum()
        if normalize:
            if not total > 0:
                raise ValidationError("p", "cannot normalize a zero vector")
            arr = arr / total
        elif exact:
            if total != 1:
                raise ValidationError("p", f"probabilities sum to {total}, not 1")
        elif abs(total - 1.0) > PROB_TOL:
            raise ValidationError("p", f"probabilities sum to {total!r}, not 1 (tolerance {PROB_TOL})")
        object.__setattr__(self, "p", frozen(arr))

    @classmethod
    def pure(cls, size: int, index: int, exact: bool = False) -> MixedStrategy:
        if not 0 <= index < size:
            raise IndexError(f"pure strategy {index} out of range for {size} strategies")
        p = [0] * size
        p[index] = 1
        return cls(p, exact=exact) if exact else cls(np.asarray(p, dtype=float))

    @classmethod
    def uniform(cls, size: int, exact: bool = False) -> MixedStrategy:
        if exact:
            return cls([Fraction(1, size)] * size, exact=True)
        return cls(np.full(size, 1.0 / size), normalize=True)

    @property
    def size(self) -> int:
        return self.p.size

    @property
    def exact(self) -> bool:
        return is_exact(self.p)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(int(i) for i, v in enumerate(self.p) if v > 0)

    def to_exact(self) -> MixedStrategy:
        # Float input is converted exactly; renormalize to absorb float rounding.
        return self if self.exact else MixedStrategy(self.p, normalize=True, exact=True)

    def to_float(self) -> MixedStrategy:
        return MixedStrategy(self.p.astype(float)) if self.exact else self

    def __len__(self) -> int:
        return self.p.size

    def __repr__(self) -> str:
        return f"MixedStrategy({self.p.tolist()!r})"


@dataclass(frozen=True, init=False)
class Scenario:
    """Program labels, per-program outcomes ``q`` and cross-losses ``r`` of a general game."""

    names: tuple[str, ...]
    q: tuple[Number, ...]
    r: tuple[tuple[Number, ...], ...]
    unit: str = ""

    def __init__(
        self,
        names: Sequence[str] | None,
        q: Sequence[Any],
        r: Sequence[Sequence[Any]],
        unit: str = "",
        exact: bool | None = None,
    ):
        exact = _resolve_exact([*q, *_flatten(r)], exact)
        n = len(q)
        if n < 1:
            raise ValidationError("q", "at least one program is required")
        qv = []
        for j, raw in enumerate(q):
            v = _checked(raw, exact, f"q[{j}]")
            if v < 0:
                raise ValidationError(f"q[{j}]", f"outcome must be non-negative, got {raw}")
            qv.append(v)
        if len(r) != n:
            raise ValidationError("r", f"expected {n} rows, got {len(r)}")
        rv = []
        for i, row in enumerate(r):
            if len(row) != n:
                raise ValidationError(f"r[{i}]", f"expected {n} entries, got {len(row)}")
            vals = []
            for j, raw in enumerate(row):
                v = _checked(raw, exact, f"r[{i}][{j}]")
                if v < 0:
                    raise ValidationError(f"r[{i}][{j}]", f"cross-loss must be non-negative, got {raw}")
                if i == j and v != 0:
                    raise ValidationError(f"r[{i}][{j}]", "diagonal must be 0 (event j neutralizes phenomenon j)")
                vals.append(v)
            rv.append(tuple(vals))
        if names is None:
            names = [f"program_{j + 1}" for j in range(n)]
        names = tuple(str(s) for s in names)
        if len(names) != n:
            raise ValidationError("programs", f"expected {n} names, got {len(names)}")
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "q", tuple(qv))
        object.__setattr__(self, "r", tuple(rv))
        object.__setattr__(self, "unit", unit)

    @property
    def n(self) -> int:
        return len(self.q)

    @property
    def exact(self) -> bool:
        return isinstance(self.q[0], Fraction)


def _checked(raw: Any, exact: bool, name: str) -> Number:
    try:
        v = parse_number(raw, exact)
    except (TypeError, ValueError, ArithmeticError) as exc:
        raise ValidationError(name, str(exc)) from None
    if not exact and not np.isfinite(v):
        raise ValidationError(name, "must be finite")
    return v


@dataclass(frozen=True)
class GameSolution:
    """Optimal strategy pair and value of a zero-sum game.

    ``support`` is the number of leading pure strategies in play for
    analytic diagonal solutions and the full column count for general
    solvers. ``order`` is set when losses were sorted before solving:
    ``order[k]`` is the original index of the k-th largest loss.
    """

    x: MixedStrategy
    y: MixedStrategy
    value: Number
    support: int
    method: Method
    order: tuple[int, ...] | None = None

    def __post_init__(self):
        if not 1 <= self.support <= self.y.size:
            raise ValueError(f"support {self.support} outside 1..{self.y.size}")

    @property
    def exact(self) -> bool:
        return self.x.exact and self.y.exact and isinstance(self.value, Fraction)


@dataclass(frozen=True)
class Violation:
    side: Literal["row", "col", "value"]
    index: int
    excess: Number


@dataclass(frozen=True)
class SaddleCertificate:
    """Evaluated saddle-point chain ``H(i, y) <= v <= H(x, j)`` with per-index payoffs.

    Violations are positive magnitudes: ``max_row_violation`` is
    ``max(0, max_i H(i, y) - v)`` and ``max_col_violation`` is
    ``max(0, v - min_j H(x, j))``.
    """

    value: Number
    row_payoffs: tuple[Number, ...]
    col_payoffs: tuple[Number, ...]
    payoff: Number
    max_row_violation: Number
    max_col_violation: Number
    valid: bool
    tolerance: Number
    violations: tuple[Violation, ...] = field(default=())

    @property
    def row_slack(self) -> tuple[Number, ...]:
        return tuple(self.value - r for r in self.row_payoffs)

    @property
    def col_slack(self) -> tuple[Number, ...]:
        return tuple(c - self.value for c in self.col_payoffs)


def common_arrays(H: GameMatrix, *strategies: MixedStrategy) -> tuple[np.ndarray, ...]:
    """Return the matrix and strategy arrays in one shared numeric mode."""
    if H.exact and all(s.exact for s in strategies):
        return (H.entries, *(s.p for s in strategies))
    return (H.entries.astype(float), *(s.p.astype(float) for s in strategies))


def _check_dims(H: GameMatrix, x: MixedStrategy | None, y: MixedStrategy | None) -> None:
    if x is not None and x.size != H.m:
        raise DimensionError(f"row strategy has {x.size} components, matrix has {H.m} rows")
    if y is not None and y.size != H.n:
        raise DimensionError(f"column strategy has {y.size} components, matrix has {H.n} columns")


def payoff(H: GameMatrix, x: MixedStrategy, y: MixedStrategy) -> Number:
    """Expected payoff ``x^T H y``."""
    _check_dims(H, x, y)
    A, xp, yp = common_arrays(H, x, y)
    return xp @ A @ yp


def pure_row_payoff(H: GameMatrix, i: int, y: MixedStrategy) -> Number:
    """Payoff ``H(i, y)`` of nature's pure strategy ``i`` (0-based) against ``y``."""
    _check_dims(H, None, y)
    if not 0 <= i < H.m:
        raise IndexError(f"row index {i} out of range for {H.m} rows")
    A, yp = common_arrays(H, y)
    return A[i] @ yp


def pure_col_payoff(H: GameMatrix, x: MixedStrategy, j: int) -> Number:
    """Payoff ``H(x, j)`` of ``x`` against the government's pure strategy ``j`` (0-based)."""
    _check_dims(H, x, None)
    if not 0 <= j < H.n:
        raise IndexError(f"column index {j} out of range for {H.n} columns")
    A, xp = common_arrays(H, x)
    return xp @ A[:, j]

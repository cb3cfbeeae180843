"""Solvers for zero-sum games against nature with neutralizing events.

The government picks one of ``n`` programs; program ``j`` fully neutralizes
phenomenon ``j``. Nature is treated as an adversary, so the government's
optimal allocation is the minimax strategy of a finite zero-sum game.
"""

from .analytic import (
    diagonal_matrix,
    game_value,
    holds_full_support,
    solve_diagonal,
    solve_losses,
    support_index,
)
from .domain import (
    GameMatrix,
    GameSolution,
    LossVector,
    MixedStrategy,
    SaddleCertificate,
    Scenario,
    payoff,
    pure_col_payoff,
    pure_row_payoff,
)
from .errors import (
    ArgumentError,
    CapError,
    DimensionError,
    GameError,
    ParseError,
    SolverError,
    ValidationError,
)
from .oracle import FictitiousPlayTrace, enumerate_supports, fictitious_play, lp_solve
from .verify import certify_saddle, equalizer_check, off_support_check, off_support_report

__version__ = "0.1.0"

"""Published worked examples and the figures printed alongside them.

The printed figures are kept verbatim, including the ones the closed-form
formulas do not reproduce; ``naturegame demo`` shows both side by side.
"""

from __future__ import annotations

from dataclasses import dataclass

from .domain import LossVector


@dataclass(frozen=True)
class PublishedExample:
    key: str
    title: str
    t: tuple[str, ...]
    programs: tuple[str, ...]
    unit: str
    printed_support: int
    printed_allocation: tuple[str, ...]
    printed_value: str

    def losses(self, exact: bool = False) -> LossVector:
        return LossVector(self.t, self.programs, exact=exact, unit=self.unit)


FULL_SUPPORT = PublishedExample(
    key="full-support",
    title="Five support programs, every program funded",
    t=("30", "28", "26", "24", "22"),
    programs=(
        "maternal_capital",
        "mortgage_for_young_families",
        "large_family_benefits",
        "preschool_education",
        "medical_support",
    ),
    unit="thousand newborns",
    printed_support=5,
    printed_allocation=("0.315", "0.266", "0.21", "0.143", "0.066"),
    printed_value="20.8",
)

# Entries printed as 1/35 and 1/45 are read as 1/3.5 and 1/4.5: only that
# reading keeps the losses strictly decreasing.
TRUNCATED = PublishedExample(
    key="truncated",
    title="Five programs, only a leading block funded",
    t=("1/3", "1/3.5", "1/4", "1/4.5", "1/5"),
    programs=("program_1", "program_2", "program_3", "program_4", "program_5"),
    unit="",
    printed_support=3,
    printed_allocation=("0.55", "0.31", "0.14", "0", "0"),
    printed_value="0.1656",
)

EXAMPLES = (FULL_SUPPORT, TRUNCATED)


def printed_tolerance(text: str) -> float:
    """Half a unit in the last printed decimal place."""
    decimals = len(text.partition(".")[2])
    return 0.5 * 10.0**-decimals

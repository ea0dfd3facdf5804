"""Precision policy shared by every numeric engine."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace


class Accel(enum.Enum):
    """Tail-handling strategy for the series engines."""

    NONE = "none"
    ALTERNATING_AVERAGE = "alternating_average"
    EULER_MACLAURIN = "euler_maclaurin"


@dataclass(frozen=True)
class PrecisionContext:
    """Evaluation budget: decimal digits wanted, guard digits, term cap."""

    target_digits: int = 30
    guard_digits: int = 12
    max_terms: int = 200_000
    acceleration: Accel = Accel.EULER_MACLAURIN

    def __post_init__(self):
        if self.target_digits < 1:
            raise ValueError("target_digits must be >= 1")
        if self.guard_digits < 10:
            raise ValueError("guard_digits must be >= 10")
        if self.max_terms < 1000:
            raise ValueError("max_terms must be >= 1000")

    @property
    def working_prec_bits(self) -> int:
        """Binary working precision covering target plus guard digits."""
        return int(math.ceil((self.target_digits + self.guard_digits) * 3.3219281)) + 8

    @property
    def target_eps_exponent(self) -> int:
        """Decimal exponent the radius should reach: 10**-target_digits."""
        return -self.target_digits

    def with_digits(self, digits: int) -> "PrecisionContext":
        return replace(self, target_digits=digits)

    def with_max_terms(self, max_terms: int) -> "PrecisionContext":
        return replace(self, max_terms=max_terms)


DEFAULT_CONTEXT = PrecisionContext()

# Deep nested sums (depth >= 3) are extrapolation-based; past this many digits
# the engines cap the goal instead of burning the whole term budget.
DEEP_TARGET_DIGITS = 10


def deep_target(ctx: PrecisionContext) -> int:
    return min(ctx.target_digits, DEEP_TARGET_DIGITS)

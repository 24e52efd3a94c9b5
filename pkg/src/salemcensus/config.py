"""Run configuration and shared error types for census runs."""

from __future__ import annotations

import dataclasses
import os
from fractions import Fraction
from typing import Optional, Union


class CensusBudgetError(RuntimeError):
    """The enumeration box exceeds the configured candidate budget."""

    def __init__(self, estimate: int, budget: int):
        super().__init__(
            f"enumeration would visit about {estimate} candidates, over the budget of {budget}; "
            "raise --budget or shrink the search"
        )
        self.estimate = estimate
        self.budget = budget


@dataclasses.dataclass
class RunConfig:
    """Knobs shared by all census entry points.

    shards=None means one worker per available CPU.  The seed only feeds
    report-level sampling; the censuses themselves are deterministic.
    """

    precision_bits: int = 256
    budget: int = 10**9
    shards: Optional[int] = None
    output_format: str = "csv"
    seed: Optional[int] = None

    def __post_init__(self):
        if self.precision_bits < 64:
            raise ValueError("precision_bits must be at least 64")
        if self.budget < 10**3:
            raise ValueError("budget must be at least 1000")
        if self.output_format not in ("csv", "json"):
            raise ValueError(f"unknown output format {self.output_format!r}")
        if self.shards is not None and self.shards < 1:
            raise ValueError("shards must be positive")

    def effective_shards(self) -> int:
        return self.shards if self.shards is not None else (os.cpu_count() or 1)


DEFAULT_CONFIG = RunConfig()


def as_fraction(x: Union[int, float, str, Fraction]) -> Fraction:
    """Exact rational from the usual CLI-facing types."""
    if isinstance(x, Fraction):
        return x
    return Fraction(str(x)) if isinstance(x, str) else Fraction(x)

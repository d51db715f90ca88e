"""Run configuration shared by the pipeline and the command line."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .interp import DEFAULT_TOL
from .support import DEFAULT_CAP


@dataclass(frozen=True)
class RunConfig:
    mode: str = "exact"
    tol: float = DEFAULT_TOL
    seed: int = 0
    mu_factor: Fraction | None = None  # default 1 (exact) or 2 (approximate)
    cap: int = DEFAULT_CAP
    max_bits: int | None = None
    validate: bool = True
    sampling: str = "rational"

    def __post_init__(self):
        if self.mode not in ("exact", "approximate"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode == "approximate" and not self.tol > 0:
            raise ValueError("approximate mode needs a positive tolerance")
        if self.mu_factor is not None and Fraction(self.mu_factor) < 1:
            raise ValueError("mu_factor must be at least 1")

    def mu(self, support_size: int) -> int:
        factor = self.mu_factor
        if factor is None:
            factor = 1 if self.mode == "exact" else 2
        return math.ceil(Fraction(factor) * support_size)

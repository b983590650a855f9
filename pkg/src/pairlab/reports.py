"""Shared verifier report type.

Every inequality checker in the package reports (lhs, rhs, ratio) plus a
pass flag against a configurable constant: the paper-style bounds carry
unspecified implied constants, so the constant is always explicit here.
"""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class BoundCheckReport:
    name: str
    lhs: float
    rhs: float
    max_ratio: float = 1.0          # pass iff ratio <= max_ratio
    details: dict = field(default_factory=dict)

    @property
    def ratio(self) -> float:
        if self.rhs == 0:
            return 0.0 if self.lhs == 0 else float("inf")
        return self.lhs / self.rhs

    @property
    def passed(self) -> bool:
        return self.ratio <= self.max_ratio

    def payload(self) -> dict:
        out = {"name": self.name, "lhs": self.lhs, "rhs": self.rhs,
               "ratio": self.ratio, "max_ratio": self.max_ratio,
               "passed": self.passed}
        if self.details:
            out["details"] = dict(self.details)
        return out

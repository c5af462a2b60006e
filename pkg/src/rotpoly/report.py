"""Small result-report value type shared by the verification operations."""
from __future__ import annotations

from dataclasses import dataclass, field

from . import scalars


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one verification pass: a named max residual plus verdict."""

    name: str
    max_residual: float
    passed: bool
    worst: dict | None = None
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {
            "check": self.name,
            "max_residual": scalars.fmt_decimal(self.max_residual),
            "passed": self.passed,
        }
        if self.worst is not None:
            out["worst"] = self.worst
        out.update(self.extra)
        return out

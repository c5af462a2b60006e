"""Sparse operator matrices on the truncated two-index basis.

The ladder and q-oscillator operators move at most one grid step per
application, so their matrices carry O(grid) nonzeros. Entries live in a
dict keyed by (row, col); arithmetic stays sparse, which keeps the exact
sympy mode fast. Dense export is available for reports.
"""
from __future__ import annotations

import numpy as np

from . import scalars


class OpMatrix:
    """Square sparse matrix over exact or floating scalars."""

    __slots__ = ("dim", "entries")

    def __init__(self, dim: int, entries=None):
        self.dim = dim
        self.entries = {rc: v for rc, v in (entries or {}).items() if v != 0}

    @classmethod
    def identity(cls, dim: int) -> "OpMatrix":
        return cls(dim, {(i, i): 1 for i in range(dim)})

    def __matmul__(self, other: "OpMatrix") -> "OpMatrix":
        by_row = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, []).append((c, v))
        out = {}
        for (r, c), v in self.entries.items():
            for c2, v2 in by_row.get(c, ()):
                key = (r, c2)
                out[key] = out.get(key, 0) + v * v2
        return OpMatrix(self.dim, out)

    def __add__(self, other: "OpMatrix") -> "OpMatrix":
        out = dict(self.entries)
        for rc, v in other.entries.items():
            out[rc] = out.get(rc, 0) + v
        return OpMatrix(self.dim, out)

    def __sub__(self, other: "OpMatrix") -> "OpMatrix":
        out = dict(self.entries)
        for rc, v in other.entries.items():
            out[rc] = out.get(rc, 0) - v
        return OpMatrix(self.dim, out)

    def scale(self, factor) -> "OpMatrix":
        return OpMatrix(self.dim, {rc: factor * v for rc, v in self.entries.items()})

    def adjoint(self) -> "OpMatrix":
        # real entries: adjoint = transpose
        return OpMatrix(self.dim, {(c, r): v for (r, c), v in self.entries.items()})

    def apply(self, vec: dict) -> dict:
        out = {}
        for (r, c), v in self.entries.items():
            if c in vec:
                out[r] = out.get(r, 0) + v * vec[c]
        return {i: v for i, v in out.items() if v != 0}

    def max_abs(self, mode: str, keep=None):
        """Largest |entry| (after exact cancellation), optionally restricted.

        keep(index) -> bool filters both row and column; returns
        (magnitude, worst (row, col) or None).
        """
        worst_val = 0.0
        worst = None
        for (r, c), v in self.entries.items():
            if keep is not None and not (keep(r) and keep(c)):
                continue
            mag = scalars.residual_magnitude(v, mode)
            if mag > worst_val:
                worst_val = mag
                worst = (r, c)
        return worst_val, worst

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.dim, self.dim))
        for (r, c), v in self.entries.items():
            out[r, c] = scalars.as_float(v)
        return out

    def to_triples(self):
        """Canonically ordered (row, col, value-text) triples for reports."""
        return [
            [r, c, scalars.fmt_decimal(v)]
            for (r, c), v in sorted(self.entries.items())
        ]

"""Scalar helpers for the two arithmetic modes.

Exact mode works with sympy numbers (rationals and square roots of
rationals, which sympy keeps in canonical form so that equal values cancel
literally). Floating mode works with plain Python floats. The mode tag
travels with the data, never with global state.
"""
from __future__ import annotations

import math
import re

import sympy as sp

from .errors import InvalidParameter

EXACT = "exact"
FLOAT = "float"

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def is_rational_text(text: str) -> bool:
    """True if the string is an integer or p/q fraction literal."""
    return bool(_RATIONAL_RE.match(text.strip()))


def parse_scalar(value, mode=None):
    """Parse a number from text/int/float into the given arithmetic mode.

    With mode=None the mode is inferred: rational-looking input stays
    exact, anything else becomes a float. Returns (scalar, mode).
    """
    if isinstance(value, str):
        text = value.strip()
        if is_rational_text(text):
            exact = sp.Rational(text)
            if mode == FLOAT:
                return float(exact), FLOAT
            return exact, EXACT
        try:
            x = float(text)
        except ValueError:
            raise InvalidParameter(f"cannot parse scalar {value!r}")
        if mode == EXACT:
            raise InvalidParameter(f"{value!r} is not rational; exact mode needs p/q")
        return x, FLOAT
    if isinstance(value, bool):
        raise InvalidParameter(f"cannot parse scalar {value!r}")
    if isinstance(value, int):
        if mode == FLOAT:
            return float(value), FLOAT
        return sp.Integer(value), EXACT
    if isinstance(value, float):
        if mode == EXACT:
            raise InvalidParameter(f"{value!r} is a float; exact mode needs p/q")
        return value, FLOAT
    if isinstance(value, sp.Expr):
        if mode == FLOAT:
            return float(value), FLOAT
        return sp.nsimplify(value, rational=True) if value.is_Float else value, EXACT
    raise InvalidParameter(f"cannot parse scalar {value!r}")


def sqrt_of(x, mode):
    if mode == EXACT:
        return sp.sqrt(x)
    return math.sqrt(x)


def as_float(x) -> float:
    if isinstance(x, sp.Expr):
        return float(x.evalf(20))
    return float(x)


def exact_zero(expr) -> bool:
    """Decide whether a sympy expression is identically zero."""
    if expr == 0:
        return True
    simplified = sp.simplify(expr)
    return simplified == 0


def residual_magnitude(x, mode) -> float:
    """Absolute size of a residual, forcing exact cancellation first."""
    if mode == EXACT:
        if exact_zero(x):
            return 0.0
        return abs(as_float(sp.simplify(x)))
    return abs(x)


def fmt_decimal(x) -> str:
    """Canonical decimal text: 17 significant digits."""
    return format(as_float(x), ".17g")


def fmt_scalar(x) -> str:
    """Canonical text: 'p/q' for exact rationals, decimal otherwise."""
    if isinstance(x, sp.Expr) and x.is_Rational:
        return str(x)
    if isinstance(x, int):
        return str(x)
    return fmt_decimal(x)

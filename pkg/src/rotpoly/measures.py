"""Rotation-invariant measures on the plane, represented by radial moments.

A rotation-invariant probability measure is fully determined by the numbers
m_n = integral of |z|^(2n); every off-diagonal moment of z^k zbar^l
vanishes. Nondegeneracy (linear independence of the monomials in L2) is
equivalent to positive definiteness of the shifted Hankel matrices
H^(d)_ij = m_(d+i+j), one per sector d = k - l.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import sympy as sp

from . import scalars
from .errors import (
    DegenerateMeasure,
    InvalidParameter,
    NonPositiveMoment,
    NotAProbability,
    NotNormalized,
    OutOfRange,
)
from .scalars import EXACT, FLOAT

# Scale-free degeneracy threshold in floating mode: a Cholesky pivot this
# small relative to the largest diagonal entry counts as a collapse.
PIVOT_RTOL = 1e-12


@dataclass(frozen=True)
class RadialMomentSequence:
    """Moments m_0..m_N of |z|^2 under a rotation-invariant measure."""

    moments: tuple
    mode: str = EXACT

    def __post_init__(self):
        if len(self.moments) == 0:
            raise InvalidParameter("empty moment sequence")
        if self.moments[0] != 1:
            raise NotNormalized(self.moments[0])
        for n, m in enumerate(self.moments):
            if not m > 0:
                raise NonPositiveMoment(n, m)

    @property
    def n_max(self) -> int:
        return len(self.moments) - 1

    def __getitem__(self, n: int):
        if n > self.n_max:
            raise OutOfRange(n, self.n_max)
        return self.moments[n]

    def dilate(self, lam) -> "RadialMomentSequence":
        """Moments of the measure pushed forward by z -> lam*z."""
        return RadialMomentSequence(
            tuple(lam ** (2 * n) * m for n, m in enumerate(self.moments)), self.mode
        )


@dataclass(frozen=True)
class MeasureSpec:
    """A named measure family plus its parameters.

    Kinds: gaussian(sigma), uniform-disc(radius), unit-circle,
    explicit(moments), from-closed-form(q, c).
    """

    kind: str
    params: dict = field(default_factory=dict)

    KINDS = ("gaussian", "uniform-disc", "unit-circle", "explicit", "from-closed-form")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise InvalidParameter(f"unknown measure kind {self.kind!r}")
        for name in ("sigma", "radius", "q", "c"):
            if name in self.params and not self.params[name] > 0:
                raise InvalidParameter(f"{name} must be positive")


def measure_from_descriptor(descriptor: dict, mode: str | None = None) -> MeasureSpec:
    """Build a MeasureSpec from the JSON descriptor format.

    Numbers arrive as text: rationals "p/q", floats as decimal text.
    """
    kind = descriptor.get("kind")
    if kind not in MeasureSpec.KINDS:
        raise InvalidParameter(f"unknown measure kind {kind!r}")
    required = {
        "gaussian": ("sigma",),
        "uniform-disc": ("radius",),
        "from-closed-form": ("q", "c"),
    }
    for name in required.get(kind, ()):
        if name not in descriptor:
            raise InvalidParameter(f"measure kind {kind!r} needs parameter {name!r}")
    params = {}
    for name in ("sigma", "radius", "q", "c"):
        if name in descriptor:
            params[name], _ = scalars.parse_scalar(descriptor[name], mode)
    if kind == "explicit":
        raw = descriptor.get("moments")
        if not raw:
            raise InvalidParameter("explicit measure needs a moments list")
        parsed = [scalars.parse_scalar(x, mode) for x in raw]
        use_mode = mode or (
            EXACT if all(m == EXACT for _, m in parsed) else FLOAT
        )
        moments = tuple(
            x if m == use_mode else scalars.parse_scalar(x, use_mode)[0]
            for x, m in parsed
        )
        params["moments"] = RadialMomentSequence(moments, use_mode)
    return MeasureSpec(kind, params)


def radial_moments(spec: MeasureSpec, n_max: int) -> RadialMomentSequence:
    """Moments m_0..m_n_max of a named measure.

    gaussian(sigma): m_n = n! sigma^(2n); uniform-disc(R): m_n =
    R^(2n)/(n+1); unit-circle: all ones; from-closed-form(q, c): vacuum
    moments of the ladder representation built from the closed-form alpha
    table; explicit: passthrough after the invariant check.
    """
    if n_max < 0:
        raise InvalidParameter("n_max must be >= 0")
    if spec.kind == "gaussian":
        sigma = spec.params["sigma"]
        mode = EXACT if isinstance(sigma, sp.Expr) and sigma.is_Rational else FLOAT
        moments = tuple(
            math.factorial(n) * sigma ** (2 * n) for n in range(n_max + 1)
        )
        return RadialMomentSequence(moments, mode)
    if spec.kind == "uniform-disc":
        radius = spec.params["radius"]
        if isinstance(radius, sp.Expr) and radius.is_Rational:
            moments = tuple(
                radius ** (2 * n) / sp.Integer(n + 1) for n in range(n_max + 1)
            )
            return RadialMomentSequence(moments, EXACT)
        moments = tuple(radius ** (2 * n) / (n + 1) for n in range(n_max + 1))
        return RadialMomentSequence(moments, FLOAT)
    if spec.kind == "unit-circle":
        return RadialMomentSequence(tuple(sp.Integer(1) for _ in range(n_max + 1)))
    if spec.kind == "explicit":
        seq = spec.params["moments"]
        if seq.n_max < n_max:
            raise OutOfRange(n_max, seq.n_max)
        return RadialMomentSequence(seq.moments[: n_max + 1], seq.mode)
    if spec.kind == "from-closed-form":
        # Diagonal vacuum moments of the closed-form ladder representation.
        from .factorize import closed_form_alphas
        from .ladder import build_ladder_rep, vacuum_moment

        q, c = spec.params["q"], spec.params["c"]
        cutoff = max(1, 2 * n_max)  # vacuum_moment(n, n) walks k+l = 2n steps
        table = closed_form_alphas(q, c, 2 * cutoff)
        rep = build_ladder_rep(table, cutoff)
        moments = tuple(vacuum_moment(rep, n, n) for n in range(n_max + 1))
        return RadialMomentSequence(moments, table.mode)
    raise InvalidParameter(f"unknown measure kind {spec.kind!r}")


def bivariate_moment(m: RadialMomentSequence, k: int, l: int):
    """Moment of z^k zbar^l: m_k on the diagonal, zero off it."""
    if k != l:
        return sp.Integer(0) if m.mode == EXACT else 0.0
    return m[k]


def _hankel(m: RadialMomentSequence, d: int, s: int):
    return [[m[d + i + j] for j in range(s)] for i in range(s)]


def _ldl_pivots(h, mode):
    """Pivots of the LDL^T factorization of a symmetric matrix.

    Returns (pivots, fail_index) where fail_index is the first
    non-positive-definite pivot position, or None.
    """
    s = len(h)
    a = [row[:] for row in h]
    pivots = []
    if mode == FLOAT:
        threshold = PIVOT_RTOL * max(a[i][i] for i in range(s))
    for i in range(s):
        d = a[i][i]
        pivots.append(d)
        bad = (d <= 0) if mode == EXACT else (d <= threshold)
        if bad:
            return pivots, i
        for r in range(i + 1, s):
            f = a[r][i] / d
            for c in range(i, s):
                a[r][c] -= f * a[i][c]
    return pivots, None


@dataclass(frozen=True)
class NondegeneracyReport:
    degree: int
    sector_pivots: tuple  # (d, size, smallest pivot) per sector
    verdict: str  # "nondegenerate"

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "sectors": [
                {"d": d, "size": s, "min_pivot": scalars.fmt_decimal(p)}
                for d, s, p in self.sector_pivots
            ],
            "verdict": self.verdict,
        }


def check_nondegenerate(m: RadialMomentSequence, degree: int) -> NondegeneracyReport:
    """Positive definiteness of every sector Hankel matrix up to a degree.

    Sector d gets the Hankel matrix of size floor((degree-d)/2)+1. Raises
    DegenerateMeasure(d, s) at the first failing sector, where s is the
    size of the leading minor that collapses.
    """
    if m.n_max < degree:
        raise OutOfRange(degree, m.n_max)
    rows = []
    for d in range(degree + 1):
        s = (degree - d) // 2 + 1
        pivots, fail = _ldl_pivots(_hankel(m, d, s), m.mode)
        if fail is not None:
            raise DegenerateMeasure(d, fail + 1)
        rows.append((d, s, min(pivots, key=scalars.as_float)))
    return NondegeneracyReport(degree, tuple(rows), "nondegenerate")


def quadrature_oracle_moments(
    radial_density, support, n_max: int, nodes: int = 256, tol: float = 1e-8
) -> RadialMomentSequence:
    """Radial moments by composite Gauss-Legendre quadrature.

    m_n ~ integral of r^(2n) rho(r) 2 pi r dr over the support interval.
    Test-only cross-check for the closed-form moment formulas; always
    floating.
    """
    if nodes < 64:
        raise InvalidParameter("need at least 64 quadrature nodes")
    lo, hi = support
    panels = max(1, nodes // 16)
    x16, w16 = np.polynomial.legendre.leggauss(16)
    edges = np.linspace(lo, hi, panels + 1)
    r_all, w_all = [], []
    for a, b in zip(edges[:-1], edges[1:]):
        mid, half = 0.5 * (a + b), 0.5 * (b - a)
        r_all.append(mid + half * x16)
        w_all.append(half * w16)
    r = np.concatenate(r_all)
    w = np.concatenate(w_all)
    rho = np.asarray([radial_density(ri) for ri in r], dtype=float)
    base = w * rho * 2.0 * np.pi * r
    moments = [float(np.sum(r ** (2 * n) * base)) for n in range(n_max + 1)]
    if abs(moments[0] - 1.0) > tol:
        raise NotAProbability(moments[0])
    moments[0] = 1.0
    return RadialMomentSequence(tuple(moments), FLOAT)

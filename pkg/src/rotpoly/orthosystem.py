"""Orthonormal bivariate polynomial systems and their recurrence coefficients.

Two independent constructions are provided. gram_schmidt orthonormalizes
the monomials 1, z, zbar, z^2, z*zbar, zbar^2, ... directly against the
moment inner product. sector_cholesky exploits rotation invariance:
monomials with different charge d = k - l are automatically orthogonal, so
the problem decouples into one Hankel-matrix LDL^T factorization per
sector. Both yield the same polynomials; tests pin that down.

From a system the recurrence coefficients alpha_(k,l) are extracted as
<P_(k+1,l), z P_(k,l)>; they satisfy

    z    P_(k,l) = alpha_(k,l) P_(k+1,l) + alpha_(l-1,k) P_(k,l-1)
    zbar P_(k,l) = alpha_(l,k) P_(k,l+1) + alpha_(k-1,l) P_(k-1,l)

with the boundary convention alpha_(-1,l) = 0, together with

    (1) alpha_(k,l) alpha_(l,k+1) = alpha_(l,k) alpha_(k,l+1)
    (2) alpha_(k,l)^2 + alpha_(l-1,k)^2 = alpha_(l,k)^2 + alpha_(k-1,l)^2
"""
from __future__ import annotations

from dataclasses import dataclass

import sympy as sp

from . import scalars
from .bipoly import BivariatePolynomial, inner_product
from .errors import DegenerateMeasure, OutOfRange, RecurrenceViolation
from .measures import PIVOT_RTOL, RadialMomentSequence, check_nondegenerate
from .report import CheckReport
from .scalars import EXACT, FLOAT

DEFAULT_TOL = 1e-10
ABS_FLOOR = 1e-12
# A genuine failure of the two-term recurrence shows up at O(1); this only
# needs to sit far above roundoff on ill-conditioned high-degree Hankels.
SPAN_TOL = 1e-6


@dataclass(frozen=True)
class OrthonormalSystem:
    """Triangular array of orthonormal polynomials P_(k,l), k+l <= N."""

    max_total_degree: int
    polys: dict  # (k, l) -> BivariatePolynomial
    source: str  # "gram-schmidt" | "sector-cholesky"
    mode: str

    def poly(self, k: int, l: int) -> BivariatePolynomial:
        return self.polys[(k, l)]

    def index_pairs(self):
        return sorted(self.polys, key=lambda kl: (kl[0] + kl[1], -kl[0]))


@dataclass(frozen=True)
class AlphaTable:
    """Recurrence coefficients alpha_(k,l) > 0 for k, l >= 0, k+l+1 <= N."""

    n: int
    values: dict  # (k, l) -> scalar
    mode: str

    def get(self, k: int, l: int):
        """Table lookup honoring the boundary convention alpha_(-1,l) = 0."""
        if k == -1:
            return sp.Integer(0) if self.mode == EXACT else 0.0
        return self.values[(k, l)]

    def has(self, k: int, l: int) -> bool:
        return k == -1 or (k, l) in self.values

    def alpha_sq(self, k: int, l: int):
        a = self.get(k, l)
        if self.mode == EXACT:
            return sp.expand(a**2)
        return a * a

    def index_pairs(self):
        return sorted(self.values, key=lambda kl: (kl[0] + kl[1], -kl[0]))

    def perturbed(self, k: int, l: int, delta) -> "AlphaTable":
        """Copy with one entry shifted; used for fault-injection tests."""
        values = dict(self.values)
        values[(k, l)] = values[(k, l)] + delta
        return AlphaTable(self.n, values, self.mode)


def graded_monomial_order(n_max: int):
    """Index pairs in graded order: degree ascending, z-power descending."""
    return [(k, n - k) for n in range(n_max + 1) for k in range(n, -1, -1)]


def gram_schmidt(m: RadialMomentSequence, n_max: int) -> OrthonormalSystem:
    """Orthonormalize the graded monomial sequence against the moments.

    Runs in monic form (projections only) and normalizes at the end, so
    exact mode stays rational until the final square root per polynomial.
    """
    if m.n_max < n_max:
        raise OutOfRange(n_max, m.n_max)
    check_nondegenerate(m, n_max)
    basis = []  # (Q monic, norm_sq)
    polys = {}
    passes = 1 if m.mode == EXACT else 2  # re-orthogonalize once in floats
    for k, l in graded_monomial_order(n_max):
        q = BivariatePolynomial.monomial(k, l)
        for _ in range(passes):
            for qj, nj in basis:
                c = inner_product(qj, q, m)
                if c != 0:
                    q = q - qj.scale(c / nj)
        norm_sq = inner_product(q, q, m)
        basis.append((q, norm_sq))
        polys[(k, l)] = q.scale(1 / scalars.sqrt_of(norm_sq, m.mode))
    return OrthonormalSystem(n_max, polys, "gram-schmidt", m.mode)


def _ldl(h, mode, sector):
    """LDL^T of a sector Hankel matrix; raises on pivot collapse."""
    s = len(h)
    a = [row[:] for row in h]
    lower = [[0] * s for _ in range(s)]
    pivots = []
    if mode == FLOAT:
        threshold = PIVOT_RTOL * max(a[i][i] for i in range(s))
    for i in range(s):
        lower[i][i] = 1
        d = a[i][i]
        bad = (d <= 0) if mode == EXACT else (d <= threshold)
        if bad:
            raise DegenerateMeasure(sector, i + 1)
        pivots.append(d)
        for r in range(i + 1, s):
            f = a[r][i] / d
            lower[r][i] = f
            for c in range(i, s):
                a[r][c] -= f * a[i][c]
    return lower, pivots


def _unit_lower_inverse(lower):
    s = len(lower)
    inv = [[0] * s for _ in range(s)]
    for i in range(s):
        inv[i][i] = 1
        for j in range(i - 1, -1, -1):
            acc = 0
            for t in range(j, i):
                acc = acc + lower[i][t] * inv[t][j]
            inv[i][j] = -acc
    return inv


def sector_cholesky(m: RadialMomentSequence, n_max: int) -> OrthonormalSystem:
    """Same system as gram_schmidt, built sector by sector.

    Sector d >= 0 holds the polynomials P_(l+d,l) = z^d * (polynomial in
    z*zbar); their Gram matrix is the Hankel matrix H^(d). Negative
    sectors follow by conjugation symmetry.
    """
    if m.n_max < n_max:
        raise OutOfRange(n_max, m.n_max)
    polys = {}
    for d in range(n_max + 1):
        size = (n_max - d) // 2 + 1
        h = [[m[d + i + j] for j in range(size)] for i in range(size)]
        lower, pivots = _ldl(h, m.mode, d)
        inv = _unit_lower_inverse(lower)
        for i in range(size):
            factor = 1 / scalars.sqrt_of(pivots[i], m.mode)
            terms = {
                (d + j, j): inv[i][j] * factor for j in range(i + 1) if inv[i][j] != 0
            }
            p = BivariatePolynomial(terms)
            polys[(d + i, i)] = p
            if d > 0:
                polys[(i, d + i)] = p.conjugate_swap()
    return OrthonormalSystem(n_max, polys, "sector-cholesky", m.mode)


def extract_alphas(
    sys: OrthonormalSystem, m: RadialMomentSequence, tol: float = SPAN_TOL
) -> AlphaTable:
    """Read off alpha_(k,l) = <P_(k+1,l), z P_(k,l)> for k+l+1 <= N.

    Also projects z P_(k,l) onto P_(k,l-1) and checks both that nothing is
    left outside the two-term span and that the down coefficient matches
    the transposed-index table entry, as the recurrence demands.
    """
    z = BivariatePolynomial.monomial(1, 0)
    n = sys.max_total_degree
    values = {}
    crosses = {}
    for k, l in graded_monomial_order(n - 1):
        zp = z * sys.poly(k, l)
        up = inner_product(sys.poly(k + 1, l), zp, m)
        down = inner_product(sys.poly(k, l - 1), zp, m) if l >= 1 else 0
        norm_sq = inner_product(zp, zp, m)
        leftover = norm_sq - up * up - down * down
        if sys.mode == EXACT:
            if not scalars.exact_zero(leftover):
                raise RecurrenceViolation(k, l, scalars.as_float(leftover))
        else:
            if abs(leftover) > max(tol * abs(norm_sq), ABS_FLOOR):
                raise RecurrenceViolation(k, l, leftover)
        values[(k, l)] = up
        if l >= 1:
            crosses[(k, l)] = down
    table = AlphaTable(n, values, sys.mode)
    for (k, l), down in crosses.items():
        expected = table.get(l - 1, k)
        diff = down - expected
        if sys.mode == EXACT:
            if not scalars.exact_zero(diff):
                raise RecurrenceViolation(k, l, scalars.as_float(diff))
        elif abs(diff) > max(tol * abs(expected), ABS_FLOOR):
            raise RecurrenceViolation(k, l, diff)
    return table


def _poly_residual_magnitude(p: BivariatePolynomial, mode: str) -> float:
    return max(
        (scalars.residual_magnitude(c, mode) for c in p.terms.values()), default=0.0
    )


def verify_recurrence(
    sys: OrthonormalSystem, a: AlphaTable, tol: float = DEFAULT_TOL
) -> CheckReport:
    """Coefficient-wise residuals of both two-term recurrences.

    Exact mode must produce the literal zero polynomial; floating mode is
    judged against the tolerance after scale normalization.
    """
    z = BivariatePolynomial.monomial(1, 0)
    zb = BivariatePolynomial.monomial(0, 1)
    worst = None
    worst_val = 0.0
    for k, l in graded_monomial_order(sys.max_total_degree - 1):
        res_z = (
            z * sys.poly(k, l)
            - sys.poly(k + 1, l).scale(a.get(k, l))
            - (
                sys.poly(k, l - 1).scale(a.get(l - 1, k))
                if l >= 1
                else BivariatePolynomial.zero()
            )
        )
        res_zb = (
            zb * sys.poly(k, l)
            - sys.poly(k, l + 1).scale(a.get(l, k))
            - (
                sys.poly(k - 1, l).scale(a.get(k - 1, l))
                if k >= 1
                else BivariatePolynomial.zero()
            )
        )
        if sys.mode == FLOAT:
            # scale-normalize: coefficient sizes grow with the degree
            scale = max(
                1.0,
                max((abs(c) for c in (z * sys.poly(k, l)).terms.values()), default=1.0),
            )
        else:
            scale = 1
        for name, res in (("z", res_z), ("zbar", res_zb)):
            mag = _poly_residual_magnitude(res, sys.mode) / scale
            if mag > worst_val:
                worst_val = mag
                worst = {"k": k, "l": l, "relation": name}
    passed = worst_val == 0.0 if sys.mode == EXACT else worst_val <= tol
    return CheckReport("recurrence", worst_val, passed, worst)


def verify_relations(a: AlphaTable, tol: float = DEFAULT_TOL) -> CheckReport:
    """Residuals of the product and sum coefficient identities, plus positivity.

    The product identity is tested in squared form so that exact mode
    stays inside the rationals; since every entry is positive the squared
    equality is equivalent.
    """

    def relative(lhs, rhs):
        if a.mode == EXACT:
            return scalars.residual_magnitude(lhs - rhs, EXACT)
        scale = max(1.0, abs(lhs), abs(rhs))
        return abs(lhs - rhs) / scale

    worst = None
    worst_val = 0.0
    positive = True
    for k, l in a.index_pairs():
        if not scalars.as_float(a.get(k, l)) > 0:
            positive = False
            worst = {"k": k, "l": l, "relation": "positivity"}
    n = a.n
    for k, l in a.index_pairs():
        if k + l + 2 <= n:
            lhs = a.alpha_sq(k, l) * a.alpha_sq(l, k + 1)
            rhs = a.alpha_sq(l, k) * a.alpha_sq(k, l + 1)
            mag = relative(lhs, rhs)
            if mag > worst_val:
                worst_val, worst = mag, {"k": k, "l": l, "relation": "product"}
        lhs = a.alpha_sq(k, l) + (a.alpha_sq(l - 1, k) if l >= 1 else 0)
        rhs = a.alpha_sq(l, k) + (a.alpha_sq(k - 1, l) if k >= 1 else 0)
        mag = relative(lhs, rhs)
        if mag > worst_val:
            worst_val, worst = mag, {"k": k, "l": l, "relation": "sum"}
    passed = positive and (
        worst_val == 0.0 if a.mode == EXACT else worst_val <= tol
    )
    return CheckReport(
        "alpha-relations", worst_val, passed, worst, {"all_positive": positive}
    )


def verify_orthonormality(
    sys: OrthonormalSystem, m: RadialMomentSequence, tol: float = DEFAULT_TOL
) -> CheckReport:
    """|<P_(k,l), P_(m,n)> - delta| over all stored index pairs."""
    pairs = sys.index_pairs()
    worst = None
    worst_val = 0.0
    for i, kl in enumerate(pairs):
        for mn in pairs[i:]:
            ip = inner_product(sys.poly(*kl), sys.poly(*mn), m)
            target = 1 if kl == mn else 0
            mag = scalars.residual_magnitude(ip - target, sys.mode)
            if mag > worst_val:
                worst_val = mag
                worst = {"kl": list(kl), "mn": list(mn)}
    passed = worst_val == 0.0 if sys.mode == EXACT else worst_val <= tol
    return CheckReport("orthonormality", worst_val, passed, worst)


def systems_agree(
    a: OrthonormalSystem, b: OrthonormalSystem, tol: float = DEFAULT_TOL
) -> CheckReport:
    """Entrywise coefficient agreement of two constructions."""
    worst = None
    worst_val = 0.0
    mode = a.mode
    for kl in a.index_pairs():
        diff = a.poly(*kl) - b.poly(*kl)
        if mode == FLOAT:
            scale = max(
                1.0, max((abs(c) for c in a.poly(*kl).terms.values()), default=1.0)
            )
        else:
            scale = 1
        mag = _poly_residual_magnitude(diff, mode) / scale
        if mag > worst_val:
            worst_val = mag
            worst = {"k": kl[0], "l": kl[1]}
    passed = worst_val == 0.0 if mode == EXACT else worst_val <= tol
    return CheckReport(
        "construction-agreement",
        worst_val,
        passed,
        worst,
        {"sources": [a.source, b.source]},
    )

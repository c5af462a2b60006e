"""Formal polynomials in the commuting pair (z, zbar) with real coefficients.

Terms are stored sparsely keyed by the exponent pair (k, l). Conjugation of
a real-coefficient polynomial in z and zbar just swaps the exponents, so no
complex scalar type is needed anywhere.
"""
from __future__ import annotations

import sympy as sp

from . import scalars
from .measures import RadialMomentSequence, bivariate_moment
from .scalars import EXACT


class BivariatePolynomial:
    """Sparse polynomial sum of c_(k,l) z^k zbar^l; zero coefficients dropped."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {kl: c for kl, c in (terms or {}).items() if c != 0}

    @classmethod
    def monomial(cls, k: int, l: int, coeff=1) -> "BivariatePolynomial":
        return cls({(k, l): coeff})

    @classmethod
    def zero(cls) -> "BivariatePolynomial":
        return cls()

    @classmethod
    def one(cls) -> "BivariatePolynomial":
        return cls({(0, 0): 1})

    def coeff(self, k: int, l: int):
        return self.terms.get((k, l), 0)

    @property
    def total_degree(self) -> int:
        return max((k + l for k, l in self.terms), default=0)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        out = dict(self.terms)
        for kl, c in other.terms.items():
            out[kl] = out.get(kl, 0) + c
        return BivariatePolynomial(out)

    def __sub__(self, other):
        out = dict(self.terms)
        for kl, c in other.terms.items():
            out[kl] = out.get(kl, 0) - c
        return BivariatePolynomial(out)

    def __neg__(self):
        return BivariatePolynomial({kl: -c for kl, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, BivariatePolynomial):
            return poly_product(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, factor) -> "BivariatePolynomial":
        if factor == 0:
            return BivariatePolynomial()
        return BivariatePolynomial({kl: factor * c for kl, c in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, BivariatePolynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def conjugate_swap(self) -> "BivariatePolynomial":
        """Complex conjugate: term (k,l) -> (l,k), coefficients unchanged."""
        return BivariatePolynomial({(l, k): c for (k, l), c in self.terms.items()})

    def canonical_text(self) -> str:
        """Report form, terms sorted by (total degree, z-power descending)."""
        if not self.terms:
            return "0"
        ordered = sorted(self.terms, key=lambda kl: (-(kl[0] + kl[1]), -kl[0]))
        pieces = []
        for k, l in ordered:
            c = self.terms[(k, l)]
            neg = scalars.as_float(c) < 0
            mag = -c if neg else c
            factors = []
            if mag != 1 or (k == 0 and l == 0):
                factors.append(scalars.fmt_scalar(mag))
            if k:
                factors.append("z" if k == 1 else f"z^{k}")
            if l:
                factors.append("zb" if l == 1 else f"zb^{l}")
            body = "·".join(factors)
            if not pieces:
                pieces.append(("-" if neg else "") + body)
            else:
                pieces.append(("- " if neg else "+ ") + body)
        return " ".join(pieces)

    def __repr__(self):
        return f"BivariatePolynomial({self.canonical_text()})"


def poly_product(
    p: BivariatePolynomial, q: BivariatePolynomial
) -> BivariatePolynomial:
    """Coefficient convolution over exponent pairs."""
    out = {}
    for (k1, l1), c1 in p.terms.items():
        for (k2, l2), c2 in q.terms.items():
            kl = (k1 + k2, l1 + l2)
            out[kl] = out.get(kl, 0) + c1 * c2
    return BivariatePolynomial(out)


def conjugate_swap(p: BivariatePolynomial) -> BivariatePolynomial:
    return p.conjugate_swap()


def moment_functional(p: BivariatePolynomial, m: RadialMomentSequence):
    """Integrate p against the measure: only diagonal terms survive."""
    total = sp.Integer(0) if m.mode == EXACT else 0.0
    for (k, l), c in p.terms.items():
        if k == l:
            total = total + c * bivariate_moment(m, k, l)
    return total


def inner_product(
    p: BivariatePolynomial, q: BivariatePolynomial, m: RadialMomentSequence
):
    """L2(mu) inner product <p, q> = integral of conj(p) q d mu."""
    if m.mode == EXACT:
        fast = _inner_product_exact(p, q, m)
        if fast is not None:
            return fast
    return moment_functional(poly_product(p.conjugate_swap(), q), m)


def _split_radical(poly: BivariatePolynomial):
    """Factor out a common irrational coefficient part, if there is one.

    The orthonormal polynomials are rational multiples of one inverse
    square root (the norm), so this almost always succeeds and lets the
    inner product run entirely over rationals.
    """
    rationals = {}
    parts = set()
    for kl, c in poly.terms.items():
        if not isinstance(c, sp.Expr):
            if not isinstance(c, int):
                return None
            c = sp.Integer(c)
        r, u = c.as_coeff_Mul()
        rationals[kl] = r
        parts.add(u)
    if len(parts) > 1:
        return None
    return rationals, (parts.pop() if parts else sp.Integer(1))


def _inner_product_exact(p, q, m):
    split_p = _split_radical(p)
    split_q = _split_radical(q)
    if split_p is None or split_q is None:
        return None
    rp, up = split_p
    rq, uq = split_q
    total = sp.Integer(0)
    # conj(p) has term (l1, k1); the product term is diagonal iff the
    # sectors k - l of the two factors match
    for (k1, l1), r1 in rp.items():
        for (k2, l2), r2 in rq.items():
            if k2 - l2 == k1 - l1:
                total += r1 * r2 * m[l1 + k2]
    return total * up * uq

"""The factorized case alpha_(k,l) = f_k g_l and its q-oscillator algebra.

When the recurrence coefficients factorize, the product identity forces
(g_l) to be geometric, g_l = q^l after moving the constant into (f_k),
and the sum identity then telescopes into the closed form

    alpha_(k,l) = c sqrt((1 - q^(2k+2)) / (1 - q^2)) q^l   (q != 1)
    alpha_(k,l) = c sqrt(k + 1)                            (q = 1).

The creator/annihilator split becomes K = c A_k q^(N_l), Lambda =
c A_l q^(N_k) with A A* - q^2 A* A = 1 on each index and all cross pairs
commuting. [n] below always means the q^2-number (1 - q^(2n))/(1 - q^2).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import sympy as sp

from . import scalars
from .errors import IncompleteTable, InvalidParameter, NonPositiveEntry
from .ladder import LadderRep
from .opmat import OpMatrix
from .orthosystem import DEFAULT_TOL, AlphaTable
from .report import CheckReport
from .scalars import EXACT, FLOAT

DETECT_TOL = 1e-8  # log-domain rank-1 threshold; genuine failures sit near 0.2


def _mode_of(q, c):
    exact = all(isinstance(x, sp.Expr) and x.is_Rational for x in (q, c))
    return EXACT if exact else FLOAT


def q_number(n: int, q, mode: str):
    """[n] = 1 + q^2 + ... + q^(2(n-1)), the q^2-deformed integer."""
    if mode == EXACT:
        return sum((q ** (2 * j) for j in range(n)), sp.Integer(0))
    return float(sum(q ** (2 * j) for j in range(n)))


def closed_form_alphas(q, c, n_max: int) -> AlphaTable:
    """The factorized table alpha_(k,l) = c sqrt([k+1]) q^l for k+l+1 <= N."""
    if not (scalars.as_float(q) > 0 and scalars.as_float(c) > 0):
        raise InvalidParameter("closed form needs q > 0 and c > 0")
    mode = _mode_of(q, c)
    values = {}
    for k in range(n_max):
        f_k = c * scalars.sqrt_of(q_number(k + 1, q, mode), mode)
        for l in range(n_max - k):
            values[(k, l)] = f_k * q**l
    return AlphaTable(n_max, values, mode)


@dataclass(frozen=True)
class FactorizationResult:
    """Outcome of the rank-1 detection on an alpha table."""

    factorizable: bool
    q: object
    c: object
    log_residual: float
    worst_entry: tuple
    f: tuple
    g: tuple

    def to_dict(self) -> dict:
        return {
            "factorizable": self.factorizable,
            "q": scalars.fmt_scalar(self.q) if self.q is not None else None,
            "c": scalars.fmt_scalar(self.c) if self.c is not None else None,
            "log_residual": scalars.fmt_decimal(self.log_residual),
            "worst_entry": list(self.worst_entry),
        }


def detect_factorization(
    a: AlphaTable, tol: float = DETECT_TOL
) -> FactorizationResult:
    """Rank-1 test in the log domain plus closed-form re-verification.

    The residual is max |log(alpha_(k,l) alpha_00) - log(alpha_(k,0)
    alpha_(0,l))|. Below tolerance the parameters are read off the first
    row and column (q = alpha_01/alpha_00, c = alpha_00) and the table is
    re-checked against the closed form, which relations (1)-(2) force once
    factorization holds.
    """
    n = a.n
    if n < 3:
        raise IncompleteTable(0, n)
    for k in range(n):
        for l in range(n - k):
            if (k, l) not in a.values:
                raise IncompleteTable(k, l)
            if not scalars.as_float(a.values[(k, l)]) > 0:
                raise NonPositiveEntry(k, l, a.values[(k, l)])

    residual = 0.0
    worst = (0, 0)
    if a.mode == EXACT:
        # the squared cross-ratio is rational, so exact tables give a
        # literal zero instead of log-of-float noise
        for k, l in a.values:
            ratio_sq = (a.alpha_sq(k, l) * a.alpha_sq(0, 0)) / (
                a.alpha_sq(k, 0) * a.alpha_sq(0, l)
            )
            ratio_sq = sp.simplify(ratio_sq)
            r = 0.0 if ratio_sq == 1 else 0.5 * abs(math.log(scalars.as_float(ratio_sq)))
            if r > residual:
                residual, worst = r, (k, l)
    else:
        log = {kl: math.log(scalars.as_float(v)) for kl, v in a.values.items()}
        for (k, l), lv in log.items():
            r = abs(lv + log[(0, 0)] - log[(k, 0)] - log[(0, l)])
            if r > residual:
                residual, worst = r, (k, l)
    c = a.get(0, 0)
    q = a.get(0, 1) / a.get(0, 0)
    if a.mode == EXACT:
        q = sp.simplify(q)
        c = sp.simplify(c)
    factorizable = residual <= tol
    if factorizable:
        # the closed form is forced; a mismatch means no valid (q, c) exists
        reference = closed_form_alphas(q, c, n)
        for kl, v in a.values.items():
            diff = scalars.as_float(v) - scalars.as_float(reference.values[kl])
            rel = abs(diff) / max(1.0, abs(scalars.as_float(v)))
            if rel > max(tol, 1e-12):
                factorizable = False
                residual = max(residual, rel)
                worst = kl
                break
    if not factorizable:
        return FactorizationResult(False, None, None, residual, worst, (), ())
    f = tuple(a.get(k, 0) / c for k in range(n))
    g = tuple(q**l for l in range(n))
    return FactorizationResult(True, q, c, residual, worst, f, g)


@dataclass(frozen=True)
class QFockOperators:
    """Deformed creators/annihilators on the truncated two-index grid."""

    cutoff: int
    mode: str
    q: object
    c: object
    a_k: OpMatrix
    a_k_star: OpMatrix
    a_l: OpMatrix
    a_l_star: OpMatrix
    q_pow_nk: OpMatrix
    q_pow_nl: OpMatrix
    k_star_built: OpMatrix  # c * a_k_star * q^(N_l)
    lambda_built: OpMatrix  # c * a_l * q^(N_k)


def q_fock_operators(q, c, cutoff: int) -> QFockOperators:
    """Matrices of A_k, A_l, their adjoints, and the q^N diagonals.

    A_k e_(k,l) = sqrt([k]) e_(k-1,l) and A_l acts the same way on the
    antiparticle index; at q = 1 they reduce to the bosonic sqrt(n) shift.
    """
    if not (scalars.as_float(q) > 0 and scalars.as_float(c) > 0):
        raise InvalidParameter("q-oscillator needs q > 0 and c > 0")
    if cutoff < 1:
        raise InvalidParameter("cutoff must be >= 1")
    mode = _mode_of(q, c)
    m = cutoff
    dim = (m + 1) ** 2

    def idx(k, l):
        return k * (m + 1) + l

    roots = [scalars.sqrt_of(q_number(n, q, mode), mode) for n in range(m + 1)]
    a_k = {}
    a_l = {}
    q_nk = {}
    q_nl = {}
    for k in range(m + 1):
        for l in range(m + 1):
            col = idx(k, l)
            if k >= 1:
                a_k[(idx(k - 1, l), col)] = roots[k]
            if l >= 1:
                a_l[(idx(k, l - 1), col)] = roots[l]
            q_nk[(col, col)] = q**k
            q_nl[(col, col)] = q**l
    a_k = OpMatrix(dim, a_k)
    a_l = OpMatrix(dim, a_l)
    q_nk = OpMatrix(dim, q_nk)
    q_nl = OpMatrix(dim, q_nl)
    return QFockOperators(
        m,
        mode,
        q,
        c,
        a_k,
        a_k.adjoint(),
        a_l,
        a_l.adjoint(),
        q_nk,
        q_nl,
        (a_k.adjoint() @ q_nl).scale(c),
        (a_l @ q_nk).scale(c),
    )


def verify_q_relations(
    ops: QFockOperators, rep: LadderRep, tol: float = DEFAULT_TOL
) -> CheckReport:
    """Interior residuals of the deformed algebra and the Phi reconstruction.

    Checks A A* - q^2 A* A = 1 for both indices, all four cross
    commutators, and that the ladder matrices built from the closed form
    equal c A_k* q^(N_l) (creator part) and c A_l q^(N_k) (annihilator
    part), entrywise on rows/columns with k,l <= M-1.
    """
    if ops.cutoff != rep.cutoff:
        raise InvalidParameter("operator grids differ")
    mode = ops.mode if ops.mode == rep.mode else FLOAT
    q_sq = ops.q**2
    ident = OpMatrix.identity(ops.a_k.dim)
    checks = {
        "deformed-k": ops.a_k @ ops.a_k_star - (ops.a_k_star @ ops.a_k).scale(q_sq) - ident,
        "deformed-l": ops.a_l @ ops.a_l_star - (ops.a_l_star @ ops.a_l).scale(q_sq) - ident,
        "cross-[ak,al]": ops.a_k @ ops.a_l - ops.a_l @ ops.a_k,
        "cross-[ak*,al*]": ops.a_k_star @ ops.a_l_star - ops.a_l_star @ ops.a_k_star,
        "cross-[ak*,al]": ops.a_k_star @ ops.a_l - ops.a_l @ ops.a_k_star,
        "cross-[ak,al*]": ops.a_k @ ops.a_l_star - ops.a_l_star @ ops.a_k,
        "rebuild-k_star": rep.k_star - ops.k_star_built,
        "rebuild-lambda": rep.lam - ops.lambda_built,
    }
    worst_val = 0.0
    worst = None
    per_check = {}
    for name, resid in checks.items():
        mag, where = resid.max_abs(mode, keep=rep.interior)
        per_check[name] = scalars.fmt_decimal(mag)
        if mag > worst_val:
            worst_val = mag
            worst = {"check": name}
            if where is not None:
                worst["row"] = list(rep.pair(where[0]))
                worst["col"] = list(rep.pair(where[1]))
    passed = worst_val == 0.0 if mode == EXACT else worst_val <= tol
    return CheckReport("q-relations", worst_val, passed, worst, {"residuals": per_check})

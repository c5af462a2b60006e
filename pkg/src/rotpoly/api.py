"""Orchestration of the full pipelines behind the service and the CLI.

Each run_* function consumes plain data (a measure descriptor dict plus
scalars), drives the library modules, and returns a JSON-ready dict whose
numbers are already in canonical text form, so emitted artifacts are
byte-stable.
"""
from __future__ import annotations

from . import scalars
from .factorize import (
    DETECT_TOL,
    closed_form_alphas,
    detect_factorization,
    q_fock_operators,
    verify_q_relations,
)
from .ladder import build_ladder_rep, vacuum_moment, verify_normality_interior
from .measures import (
    MeasureSpec,
    check_nondegenerate,
    measure_from_descriptor,
    radial_moments,
)
from .orthosystem import (
    DEFAULT_TOL,
    extract_alphas,
    gram_schmidt,
    sector_cholesky,
    systems_agree,
    verify_orthonormality,
    verify_recurrence,
    verify_relations,
)
from .scalars import EXACT


def _mode_arg(arithmetic: str | None):
    if arithmetic in (None, "auto"):
        return None
    if arithmetic in (EXACT, "float"):
        return arithmetic
    from .errors import InvalidParameter

    raise InvalidParameter(f"unknown arithmetic mode {arithmetic!r}")


def _measure(descriptor: dict, arithmetic: str | None) -> MeasureSpec:
    return measure_from_descriptor(descriptor, _mode_arg(arithmetic))


def run_moments(descriptor: dict, n_max: int, arithmetic: str | None = None) -> dict:
    spec = _measure(descriptor, arithmetic)
    m = radial_moments(spec, n_max)
    return {
        "arithmetic": m.mode,
        "moments": [
            {"n": n, "value": scalars.fmt_scalar(v)} for n, v in enumerate(m.moments)
        ],
    }


def _alpha_rows(table) -> list:
    rows = []
    for k, l in table.index_pairs():
        row = {
            "k": k,
            "l": l,
            "alpha": scalars.fmt_decimal(table.get(k, l)),
            "alpha_sq": scalars.fmt_scalar(table.alpha_sq(k, l)),
        }
        rows.append(row)
    return rows


def run_alphas(descriptor: dict, n: int, arithmetic: str | None = None) -> dict:
    spec = _measure(descriptor, arithmetic)
    m = radial_moments(spec, n)
    table = extract_alphas(sector_cholesky(m, n), m)
    return {"arithmetic": m.mode, "n": n, "alphas": _alpha_rows(table)}


def run_verify(
    descriptor: dict,
    n: int,
    m_cutoff: int,
    tolerance: float = DEFAULT_TOL,
    arithmetic: str | None = None,
) -> dict:
    """Full verification battery for one measure: orthonormality, both
    recurrences, the coefficient identities, construction agreement, and
    interior normality of the truncated field operator."""
    spec = _measure(descriptor, arithmetic)
    n_moments = max(n, 2 * m_cutoff)
    moments = radial_moments(spec, n_moments)
    check_nondegenerate(moments, n)
    gs = gram_schmidt(moments, n)
    sc = sector_cholesky(moments, n)
    table = extract_alphas(gs, moments)
    wide_table = extract_alphas(sector_cholesky(moments, 2 * m_cutoff), moments)
    rep = build_ladder_rep(wide_table, m_cutoff)
    checks = [
        verify_orthonormality(gs, moments, tolerance),
        systems_agree(gs, sc, tolerance),
        verify_recurrence(gs, table, tolerance),
        verify_relations(table, tolerance),
        verify_normality_interior(rep, tolerance),
    ]
    return {
        "arithmetic": moments.mode,
        "n": n,
        "cutoff": m_cutoff,
        "checks": [c.to_dict() for c in checks],
        "passed": all(c.passed for c in checks),
    }


def run_factorize(
    descriptor: dict,
    n: int,
    tolerance: float = DETECT_TOL,
    arithmetic: str | None = None,
) -> dict:
    spec = _measure(descriptor, arithmetic)
    moments = radial_moments(spec, n)
    table = extract_alphas(sector_cholesky(moments, n), moments)
    result = detect_factorization(table, tolerance)
    out = result.to_dict()
    out["arithmetic"] = moments.mode
    out["n"] = n
    if result.factorizable and scalars.as_float(result.q) > 1:
        out["note"] = "q > 1: radial moments grow without bound"
    return out


def run_ladder(
    q,
    c,
    m_cutoff: int,
    tolerance: float = DEFAULT_TOL,
    arithmetic: str | None = None,
) -> dict:
    """Closed-form ladder representation plus the q-algebra verification."""
    mode = _mode_arg(arithmetic)
    q, _ = scalars.parse_scalar(q, mode)
    c, _ = scalars.parse_scalar(c, mode)
    table = closed_form_alphas(q, c, 2 * m_cutoff)
    rep = build_ladder_rep(table, m_cutoff)
    ops = q_fock_operators(q, c, m_cutoff)
    qrel = verify_q_relations(ops, rep, tolerance)
    norm = verify_normality_interior(rep, tolerance)
    checks = [qrel, norm]
    out = {
        "arithmetic": rep.mode,
        "cutoff": m_cutoff,
        "q": scalars.fmt_scalar(q),
        "c": scalars.fmt_scalar(c),
        "checks": [chk.to_dict() for chk in checks],
        "passed": all(chk.passed for chk in checks),
    }
    if scalars.as_float(q) > 1:
        out["note"] = "q > 1: radial moments grow without bound"
    return out


def run_roundtrip(
    q,
    c,
    n: int,
    tolerance: float = 1e-9,
    arithmetic: str | None = None,
) -> dict:
    """Closed form -> ladder -> vacuum moments -> Gram-Schmidt -> alphas.

    The measure-free construction and the moment-based one must be mutual
    inverses; reports the worst relative discrepancy across the table.

    Floating inputs are exact binary rationals, and the Hankel
    factorization is too ill-conditioned for double precision to certify
    closure beyond ~1e-7, so the pipeline always runs in rational
    arithmetic; only the reported numbers follow the requested mode.
    """
    from fractions import Fraction

    import sympy as sp

    from .measures import RadialMomentSequence

    mode = _mode_arg(arithmetic)
    q, q_mode = scalars.parse_scalar(q, mode)
    c, c_mode = scalars.parse_scalar(c, mode)
    report_mode = EXACT if q_mode == c_mode == EXACT else scalars.FLOAT
    qx = q if q_mode == EXACT else sp.Rational(Fraction(q))
    cx = c if c_mode == EXACT else sp.Rational(Fraction(c))
    table = closed_form_alphas(qx, cx, n)
    # vacuum_moment(n, n) walks k+l = 2n steps, so the grid needs cutoff 2n
    rep = build_ladder_rep(closed_form_alphas(qx, cx, 4 * n), 2 * n)
    moments = RadialMomentSequence(
        tuple(vacuum_moment(rep, j, j) for j in range(n + 1)), EXACT
    )
    sys = gram_schmidt(moments, n)
    recovered = extract_alphas(sys, moments)
    worst = None
    worst_val = 0.0
    for kl in table.index_pairs():
        mag = scalars.residual_magnitude(
            table.alpha_sq(*kl) - recovered.alpha_sq(*kl), EXACT
        )
        if mag > worst_val:
            worst_val = mag
            worst = {"k": kl[0], "l": kl[1]}
    passed = worst_val == 0.0 if report_mode == EXACT else worst_val <= tolerance
    if report_mode == EXACT:
        moments_text = [scalars.fmt_scalar(v) for v in moments.moments]
    else:
        moments_text = [scalars.fmt_decimal(scalars.as_float(v)) for v in moments.moments]
    return {
        "arithmetic": report_mode,
        "n": n,
        "q": scalars.fmt_scalar(q),
        "c": scalars.fmt_scalar(c),
        "moments": moments_text,
        "max_discrepancy": scalars.fmt_decimal(worst_val),
        "worst": worst,
        "passed": passed,
    }

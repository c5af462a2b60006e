"""Truncated ladder-operator representation of the field operator.

On the basis e_(k,l) (k particles, l antiparticles, 0 <= k,l <= M) the
field operator acts as

    Phi  e_(k,l) = alpha_(k,l) e_(k+1,l) + alpha_(l-1,k) e_(k,l-1)
    Phi* e_(k,l) = alpha_(l,k) e_(k,l+1) + alpha_(k-1,l) e_(k-1,l)

so Phi = K* + Lambda splits into a particle creator and an antiparticle
annihilator. Transitions that would leave the grid are dropped; all
exactness statements are made on the interior or under k+l <= M.
"""
from __future__ import annotations

from dataclasses import dataclass

import sympy as sp

from .errors import CutoffTooSmall, MissingAlpha
from .opmat import OpMatrix
from .orthosystem import DEFAULT_TOL, AlphaTable
from .report import CheckReport
from .scalars import EXACT


@dataclass(frozen=True)
class LadderRep:
    """Matrices of Phi and friends on the (M+1)^2 basis, row-major by (k,l)."""

    cutoff: int
    mode: str
    phi: OpMatrix
    phi_star: OpMatrix
    k_star: OpMatrix
    lam: OpMatrix
    n_particles: OpMatrix
    n_antiparticles: OpMatrix

    @property
    def dim(self) -> int:
        return (self.cutoff + 1) ** 2

    def index(self, k: int, l: int) -> int:
        return k * (self.cutoff + 1) + l

    def pair(self, idx: int):
        return divmod(idx, self.cutoff + 1)

    def interior(self, idx: int) -> bool:
        k, l = self.pair(idx)
        return k <= self.cutoff - 1 and l <= self.cutoff - 1

    def to_dict(self) -> dict:
        return {
            "cutoff": self.cutoff,
            "matrices": {
                name: getattr(self, attr).to_triples()
                for name, attr in (
                    ("phi", "phi"),
                    ("phi_star", "phi_star"),
                    ("k_star", "k_star"),
                    ("lambda", "lam"),
                    ("n_particles", "n_particles"),
                    ("n_antiparticles", "n_antiparticles"),
                )
            },
        }


def build_ladder_rep(a: AlphaTable, cutoff: int) -> LadderRep:
    """Populate the truncated matrices from an alpha table.

    Needs alpha_(k,l) for every in-grid transition, i.e. k <= M-1 and
    l <= M; raises MissingAlpha otherwise.
    """
    m = cutoff
    dim = (m + 1) ** 2

    def idx(k, l):
        return k * (m + 1) + l

    for k in range(m):
        for l in range(m + 1):
            if not a.has(k, l):
                raise MissingAlpha(k, l)
    k_star = {}
    lam = {}
    for k in range(m + 1):
        for l in range(m + 1):
            col = idx(k, l)
            if k + 1 <= m:
                k_star[(idx(k + 1, l), col)] = a.get(k, l)
            if l - 1 >= 0:
                lam[(idx(k, l - 1), col)] = a.get(l - 1, k)
    k_star = OpMatrix(dim, k_star)
    lam = OpMatrix(dim, lam)
    phi = k_star + lam
    one = sp.Integer(1) if a.mode == EXACT else 1.0
    n_k = OpMatrix(dim, {(idx(k, l), idx(k, l)): k * one for k in range(m + 1) for l in range(m + 1)})
    n_l = OpMatrix(dim, {(idx(k, l), idx(k, l)): l * one for k in range(m + 1) for l in range(m + 1)})
    return LadderRep(m, a.mode, phi, phi.adjoint(), k_star, lam, n_k, n_l)


def split_phi(rep: LadderRep) -> dict:
    """The creator/annihilator split of Phi and the adjoint pair for Phi*."""
    return {
        "k_star": rep.k_star,
        "lambda": rep.lam,
        "k": rep.k_star.adjoint(),
        "lambda_star": rep.lam.adjoint(),
    }


def vacuum_moment(rep: LadderRep, k: int, l: int):
    """<e_00, Phi^k Phi*^l e_00>; truncation-exact while k+l <= cutoff."""
    if k + l > rep.cutoff:
        raise CutoffTooSmall(k, l, rep.cutoff)
    vec = {rep.index(0, 0): sp.Integer(1) if rep.mode == EXACT else 1.0}
    for _ in range(l):
        vec = rep.phi_star.apply(vec)
    for _ in range(k):
        vec = rep.phi.apply(vec)
    zero = sp.Integer(0) if rep.mode == EXACT else 0.0
    return vec.get(rep.index(0, 0), zero)


def verify_normality_interior(rep: LadderRep, tol: float = DEFAULT_TOL) -> CheckReport:
    """Commutator [Phi, Phi*] restricted to rows and columns with k,l < M.

    On the interior truncation cannot leak, so the residual isolates
    exactly the content of relations (1) and (2).
    """
    prod = rep.phi @ rep.phi_star
    comm = prod - rep.phi_star @ rep.phi
    mag, worst = comm.max_abs(rep.mode, keep=rep.interior)
    if rep.mode != EXACT:
        # judge relative to the size of Phi Phi* itself
        scale, _ = prod.max_abs(rep.mode, keep=rep.interior)
        mag = mag / max(1.0, scale)
    passed = mag == 0.0 if rep.mode == EXACT else mag <= tol
    worst_dict = None
    if worst is not None:
        worst_dict = {"row": list(rep.pair(worst[0])), "col": list(rep.pair(worst[1]))}
    return CheckReport("normality-interior", mag, passed, worst_dict)

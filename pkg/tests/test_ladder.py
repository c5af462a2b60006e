import pytest
import sympy as sp

from rotpoly.errors import CutoffTooSmall, MissingAlpha
from rotpoly.factorize import closed_form_alphas
from rotpoly.ladder import (
    build_ladder_rep,
    split_phi,
    vacuum_moment,
    verify_normality_interior,
)
from rotpoly.measures import radial_moments
from rotpoly.orthosystem import extract_alphas, sector_cholesky


def measure_table(m, n):
    return extract_alphas(sector_cholesky(m, n), m)


@pytest.fixture(scope="module")
def gaussian_rep(gaussian_m):
    return build_ladder_rep(measure_table(gaussian_m, 8), 4)


@pytest.fixture(scope="module")
def disc_rep(disc_m):
    return build_ladder_rep(measure_table(disc_m, 8), 4)


class TestBuild:
    def test_phi_column_at_vacuum(self, gaussian_m):
        # alpha_(-1,0) = 0 kills the down term: only e_10 <- e_00 remains
        rep = build_ladder_rep(measure_table(gaussian_m, 4), 2)
        col = [(rc, v) for rc, v in rep.phi.entries.items() if rc[1] == rep.index(0, 0)]
        assert col == [((rep.index(1, 0), rep.index(0, 0)), 1)]

    def test_lambda_lowers_antiparticles(self, disc_m):
        rep = build_ladder_rep(measure_table(disc_m, 2), 1)
        vec = rep.lam.apply({rep.index(0, 1): sp.Integer(1)})
        assert vec == {rep.index(0, 0): sp.sqrt(sp.Rational(1, 2))}

    def test_closed_form_phi_action(self):
        # q=1/2, c=1: phi e_01 = (1/2) e_11 + 1 e_00
        rep = build_ladder_rep(closed_form_alphas(sp.Rational(1, 2), sp.Integer(1), 6), 2)
        vec = rep.phi.apply({rep.index(0, 1): sp.Integer(1)})
        assert vec == {
            rep.index(1, 1): sp.Rational(1, 2),
            rep.index(0, 0): sp.Integer(1),
        }

    def test_phi_splits(self, gaussian_rep):
        assert (gaussian_rep.phi - (gaussian_rep.k_star + gaussian_rep.lam)).entries == {}

    def test_phi_star_is_adjoint(self, disc_rep):
        assert (disc_rep.phi_star - disc_rep.phi.adjoint()).entries == {}

    def test_number_operators(self, disc_rep):
        for k in range(3):
            for l in range(3):
                vec = {disc_rep.index(k, l): sp.Integer(1)}
                nk = disc_rep.n_particles.apply(vec)
                assert nk.get(disc_rep.index(k, l), 0) == k
                nl = disc_rep.n_antiparticles.apply(vec)
                assert nl.get(disc_rep.index(k, l), 0) == l

    def test_missing_alpha(self, disc_m):
        table = measure_table(disc_m, 4)
        with pytest.raises(MissingAlpha):
            build_ladder_rep(table, 4)


class TestVacuumMoments:
    def test_gaussian_m2(self, gaussian_m):
        rep = build_ladder_rep(measure_table(gaussian_m, 8), 4)
        assert vacuum_moment(rep, 2, 2) == 2

    def test_closed_form_m2(self):
        rep = build_ladder_rep(closed_form_alphas(sp.Rational(1, 2), sp.Integer(1), 8), 4)
        assert vacuum_moment(rep, 2, 2) == sp.Rational(5, 4)

    def test_charge_conservation(self, gaussian_rep, disc_rep):
        for rep in (gaussian_rep, disc_rep):
            for k in range(4):
                for l in range(4):
                    if k != l and k + l <= rep.cutoff:
                        assert vacuum_moment(rep, k, l) == 0

    def test_cutoff_guard(self, gaussian_rep):
        with pytest.raises(CutoffTooSmall):
            vacuum_moment(gaussian_rep, 3, 2)

    def test_round_trip_reproduces_moments(self, gaussian_m, disc_m):
        for m in (gaussian_m, disc_m):
            rep = build_ladder_rep(measure_table(m, 12), 6)
            for n in range(4):
                assert vacuum_moment(rep, n, n) == m[n]

    def test_diagonal_path_product(self, disc_m):
        table = measure_table(disc_m, 12)
        rep = build_ladder_rep(table, 6)
        for n in range(4):
            prod = sp.Integer(1)
            for j in range(n):
                prod *= table.alpha_sq(j, 0)
            assert vacuum_moment(rep, n, n) == prod


class TestNormality:
    def test_exact_interior_zero(self, gaussian_m, disc_m):
        for m in (gaussian_m, disc_m):
            rep = build_ladder_rep(measure_table(m, 8), 4)
            report = verify_normality_interior(rep)
            assert report.passed and report.max_residual == 0.0

    def test_broken_sum_identity_shows_on_diagonal(self, disc_m):
        table = measure_table(disc_m, 8).perturbed(1, 1, sp.Rational(1, 100))
        rep = build_ladder_rep(table, 4)
        report = verify_normality_interior(rep)
        assert not report.passed
        # the tampered entry feeds the diagonal part of the commutator
        assert report.max_residual > 1e-4


class TestSplit:
    def test_k_star_raises_grading(self, gaussian_rep):
        parts = split_phi(gaussian_rep)
        comm = (
            gaussian_rep.n_particles @ parts["k_star"]
            - parts["k_star"] @ gaussian_rep.n_particles
        )
        diff = comm - parts["k_star"]
        mag, _ = diff.max_abs(gaussian_rep.mode, keep=gaussian_rep.interior)
        assert mag == 0.0

    def test_lambda_kills_zero_antiparticle_states(self, disc_rep):
        parts = split_phi(disc_rep)
        for k in range(disc_rep.cutoff + 1):
            assert parts["lambda"].apply({disc_rep.index(k, 0): sp.Integer(1)}) == {}

    def test_k_annihilates_down_to_vacuum(self, gaussian_m):
        rep = build_ladder_rep(measure_table(gaussian_m, 4), 2)
        parts = split_phi(rep)
        vec = parts["k"].apply({rep.index(1, 0): sp.Integer(1)})
        assert vec == {rep.index(0, 0): sp.Integer(1)}

    def test_adjoint_pairing(self, disc_rep):
        parts = split_phi(disc_rep)
        resid = disc_rep.phi_star - (parts["k"] + parts["lambda_star"])
        assert resid.entries == {}

    def test_json_dump_shape(self, disc_rep):
        dump = disc_rep.to_dict()
        assert dump["cutoff"] == 4
        assert set(dump["matrices"]) == {
            "phi",
            "phi_star",
            "k_star",
            "lambda",
            "n_particles",
            "n_antiparticles",
        }
        triples = dump["matrices"]["phi"]
        assert triples == sorted(triples, key=lambda t: (t[0], t[1]))

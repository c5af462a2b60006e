import math

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from rotpoly.errors import IncompleteTable, InvalidParameter, NonPositiveEntry
from rotpoly.factorize import (
    closed_form_alphas,
    detect_factorization,
    q_fock_operators,
    q_number,
    verify_q_relations,
)
from rotpoly.ladder import build_ladder_rep, vacuum_moment
from rotpoly.measures import RadialMomentSequence
from rotpoly.orthosystem import (
    AlphaTable,
    extract_alphas,
    gram_schmidt,
    sector_cholesky,
    verify_relations,
)

HALF = sp.Rational(1, 2)
ONE = sp.Integer(1)


class TestClosedForm:
    def test_q_one_is_square_root_ladder(self):
        table = closed_form_alphas(ONE, ONE, 5)
        for (k, l), v in table.values.items():
            assert sp.simplify(v - sp.sqrt(k + 1)) == 0

    def test_q_half_alpha01(self):
        assert closed_form_alphas(HALF, ONE, 4).get(0, 1) == HALF

    def test_q_half_alpha10(self):
        v = closed_form_alphas(HALF, ONE, 4).get(1, 0)
        assert sp.simplify(v - sp.sqrt(5) / 2) == 0
        assert float(v) == pytest.approx(1.11803, abs=1e-5)

    def test_invalid_parameters(self):
        with pytest.raises(InvalidParameter):
            closed_form_alphas(sp.Integer(0), ONE, 4)
        with pytest.raises(InvalidParameter):
            closed_form_alphas(ONE, sp.Integer(-1), 4)

    @pytest.mark.parametrize("q", [HALF, ONE, sp.Integer(2), sp.Rational(1, 4)])
    def test_relations_hold_identically(self, q):
        report = verify_relations(closed_form_alphas(q, ONE, 8))
        assert report.passed and report.max_residual == 0.0

    def test_q_number_positive(self):
        for q in (HALF, ONE, sp.Integer(3)):
            for n in range(1, 12):
                assert q_number(n, q, "exact") > 0

    def test_branches_continuous_at_one(self):
        # general-branch evaluation just shy of q=1 limits to sqrt(k+1)
        near = closed_form_alphas(1.0 - 1e-9, 1.0, 5)
        exact = closed_form_alphas(ONE, ONE, 5)
        for kl, v in near.values.items():
            assert v == pytest.approx(float(exact.get(*kl)), rel=1e-7)


class TestDetection:
    def test_round_trip_exact(self):
        table = closed_form_alphas(HALF, ONE, 6)
        result = detect_factorization(table)
        assert result.factorizable
        assert result.q == HALF
        assert result.c == 1
        assert result.log_residual == 0.0

    def test_gaussian_measured_table(self, gaussian_m):
        table = extract_alphas(gram_schmidt(gaussian_m, 6), gaussian_m)
        result = detect_factorization(table)
        assert result.factorizable
        assert sp.simplify(result.q - 1) == 0
        assert sp.simplify(result.c - 1) == 0

    def test_disc_not_factorizable(self, disc_m):
        table = extract_alphas(gram_schmidt(disc_m, 3), disc_m)
        result = detect_factorization(table)
        assert not result.factorizable
        # hand value |log((1/sqrt 6)/(1/3))| at entry (1,1)
        assert result.worst_entry == (1, 1)
        assert result.log_residual == pytest.approx(math.log(3 / math.sqrt(6)), abs=1e-12)
        assert result.log_residual == pytest.approx(0.2027, abs=1e-3)

    def test_float_round_trip_recovers_parameters(self):
        table = closed_form_alphas(0.37, 1.9, 7)
        result = detect_factorization(table)
        assert result.factorizable
        assert result.q == pytest.approx(0.37, rel=1e-12)
        assert result.c == pytest.approx(1.9, rel=1e-12)

    def test_incomplete_table_rejected(self):
        with pytest.raises(IncompleteTable):
            detect_factorization(AlphaTable(2, {(0, 0): ONE, (0, 1): ONE}, "exact"))

    def test_nonpositive_entry_rejected(self):
        values = {
            (k, l): ONE for k in range(4) for l in range(4 - k)
        }
        values[(1, 1)] = sp.Integer(-1)
        with pytest.raises(NonPositiveEntry):
            detect_factorization(AlphaTable(4, values, "exact"))

    @given(
        q=st.fractions(min_value="1/4", max_value=3),
        c=st.fractions(min_value="1/4", max_value=3),
    )
    @settings(max_examples=20, deadline=None)
    def test_detection_inverts_closed_form(self, q, c):
        q, c = sp.Rational(q), sp.Rational(c)
        result = detect_factorization(closed_form_alphas(q, c, 5))
        assert result.factorizable
        assert sp.simplify(result.q - q) == 0
        assert sp.simplify(result.c - c) == 0


class TestQFockOperators:
    def test_creator_matches_closed_form_alpha(self):
        # (c a_k* q^(N_l)) e_01 = (1/2) e_11 at q=1/2, c=1
        ops = q_fock_operators(HALF, ONE, 2)
        vec = ops.k_star_built.apply({1: ONE})  # index of e_01 on the 3x3 grid
        assert vec == {4: HALF}  # index of e_11

    def test_q_one_reduces_to_bosonic_shift(self):
        ops = q_fock_operators(ONE, ONE, 3)
        for k in range(1, 4):
            for l in range(4):
                col = k * 4 + l
                vec = ops.a_k.apply({col: ONE})
                assert vec == {(k - 1) * 4 + l: sp.sqrt(k)}

    def test_vacuum_annihilation(self):
        ops = q_fock_operators(sp.Rational(3, 2), ONE, 3)
        for l in range(4):
            assert ops.a_k.apply({l: ONE}) == {}

    @pytest.mark.parametrize("q", [sp.Rational(1, 4), HALF, ONE, sp.Integer(2)])
    @pytest.mark.parametrize("c", [ONE, sp.Integer(2)])
    def test_q_relations_exact(self, q, c):
        cutoff = 6
        rep = build_ladder_rep(closed_form_alphas(q, c, 2 * cutoff), cutoff)
        report = verify_q_relations(q_fock_operators(q, c, cutoff), rep)
        assert report.passed and report.max_residual == 0.0


class TestPipelineClosure:
    @pytest.mark.parametrize("q", [HALF, sp.Integer(2)])
    def test_closed_form_is_inverse_of_measure_route(self, q):
        n = 6
        table = closed_form_alphas(q, ONE, n)
        rep = build_ladder_rep(closed_form_alphas(q, ONE, 4 * n), 2 * n)
        moments = RadialMomentSequence(
            tuple(vacuum_moment(rep, j, j) for j in range(n + 1)), "exact"
        )
        recovered = extract_alphas(gram_schmidt(moments, n), moments)
        for kl in table.values:
            assert table.alpha_sq(*kl) == recovered.alpha_sq(*kl)

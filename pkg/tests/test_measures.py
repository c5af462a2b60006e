import math

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from rotpoly.errors import (
    DegenerateMeasure,
    NonPositiveMoment,
    NotAProbability,
    NotNormalized,
    OutOfRange,
)
from rotpoly.measures import (
    MeasureSpec,
    RadialMomentSequence,
    bivariate_moment,
    check_nondegenerate,
    measure_from_descriptor,
    quadrature_oracle_moments,
    radial_moments,
)


def gaussian_density(sigma):
    return lambda r: math.exp(-(r * r) / (sigma * sigma)) / (math.pi * sigma * sigma)


def disc_density(radius):
    return lambda r: (1.0 / (math.pi * radius * radius)) if r <= radius else 0.0


class TestNamedMoments:
    def test_gaussian_unit_sigma(self):
        m = radial_moments(MeasureSpec("gaussian", {"sigma": sp.Integer(1)}), 3)
        assert m.moments == (1, 1, 2, 6)

    def test_uniform_disc(self):
        m = radial_moments(MeasureSpec("uniform-disc", {"radius": sp.Integer(1)}), 3)
        assert m.moments == (1, sp.Rational(1, 2), sp.Rational(1, 3), sp.Rational(1, 4))

    def test_unit_circle(self):
        m = radial_moments(MeasureSpec("unit-circle"), 2)
        assert m.moments == (1, 1, 1)

    def test_closed_form_measure_q_half(self):
        spec = MeasureSpec(
            "from-closed-form", {"q": sp.Rational(1, 2), "c": sp.Integer(1)}
        )
        m = radial_moments(spec, 2)
        assert m.moments == (1, 1, sp.Rational(5, 4))

    # quadrature is the independent oracle for every closed-form formula
    @pytest.mark.parametrize("sigma", [1.0, 0.5, 2.0])
    def test_gaussian_against_quadrature(self, sigma):
        oracle = quadrature_oracle_moments(
            gaussian_density(sigma), (0.0, 14.0 * sigma), 8, nodes=512
        )
        m = radial_moments(MeasureSpec("gaussian", {"sigma": sigma}), 8)
        for n in range(9):
            assert m[n] == pytest.approx(oracle[n], rel=1e-9)

    @pytest.mark.parametrize("radius", [1.0, 2.5])
    def test_disc_against_quadrature(self, radius):
        oracle = quadrature_oracle_moments(
            disc_density(radius), (0.0, radius), 8, nodes=512
        )
        m = radial_moments(MeasureSpec("uniform-disc", {"radius": radius}), 8)
        for n in range(9):
            assert m[n] == pytest.approx(oracle[n], rel=1e-9)

    def test_quadrature_rejects_non_probability(self):
        with pytest.raises(NotAProbability):
            quadrature_oracle_moments(lambda r: 0.0, (0.0, 1.0), 2, nodes=128)


class TestSequenceInvariants:
    def test_m0_must_be_one(self):
        with pytest.raises(NotNormalized):
            RadialMomentSequence((sp.Integer(2), sp.Integer(1)))

    def test_moments_must_be_positive(self):
        with pytest.raises(NonPositiveMoment):
            RadialMomentSequence((sp.Integer(1), sp.Integer(0)))

    def test_out_of_range(self, disc_m):
        with pytest.raises(OutOfRange):
            disc_m[disc_m.n_max + 1]

    def test_explicit_passthrough(self):
        spec = measure_from_descriptor(
            {"kind": "explicit", "moments": ["1", "1/2", "1/3"]}
        )
        m = radial_moments(spec, 2)
        assert m.moments == (1, sp.Rational(1, 2), sp.Rational(1, 3))
        assert m.mode == "exact"


class TestBivariateMoment:
    def test_diagonal_gaussian(self, gaussian_m):
        assert bivariate_moment(gaussian_m, 2, 2) == 2

    def test_off_diagonal_vanishes(self, gaussian_m, disc_m):
        for m in (gaussian_m, disc_m):
            for k in range(13):
                for l in range(13):
                    if k != l:
                        assert bivariate_moment(m, k, l) == 0

    def test_normalization(self, disc_m):
        assert bivariate_moment(disc_m, 0, 0) == 1


class TestNondegeneracy:
    def test_gaussian_nondegenerate(self, gaussian_m):
        report = check_nondegenerate(gaussian_m, 6)
        assert report.verdict == "nondegenerate"

    def test_disc_nondegenerate(self, disc_m):
        assert check_nondegenerate(disc_m, 6).verdict == "nondegenerate"

    def test_unit_circle_degenerate(self, circle_m):
        with pytest.raises(DegenerateMeasure) as err:
            check_nondegenerate(circle_m, 2)
        assert (err.value.d, err.value.s) == (0, 2)

    @given(lam=st.fractions(min_value="1/4", max_value=4))
    @settings(max_examples=25, deadline=None)
    def test_dilation_keeps_verdict(self, lam, disc_m):
        scaled = disc_m.dilate(sp.Rational(lam))
        assert check_nondegenerate(scaled, 5).verdict == "nondegenerate"


# random atomic rotation-invariant measures: m_n = sum_i w_i r_i^(2n);
# distinct positive radii make every sector Hankel positive definite
@st.composite
def atomic_moments(draw, n_atoms=5, n_max=8):
    radii = draw(
        st.lists(
            st.fractions(min_value="1/3", max_value=3),
            min_size=n_atoms,
            max_size=n_atoms,
            unique=True,
        )
    )
    weights = draw(
        st.lists(
            st.fractions(min_value="1/10", max_value=1),
            min_size=n_atoms,
            max_size=n_atoms,
        )
    )
    total = sum(weights)
    moments = tuple(
        sum(sp.Rational(w / total) * sp.Rational(r) ** (2 * n) for w, r in zip(weights, radii))
        for n in range(n_max + 1)
    )
    return RadialMomentSequence(moments)


@given(atomic_moments())
@settings(max_examples=20, deadline=None)
def test_atomic_measures_are_nondegenerate(m):
    # 5 distinct radii support sector Hankels up to size 5
    assert check_nondegenerate(m, 8).verdict == "nondegenerate"
